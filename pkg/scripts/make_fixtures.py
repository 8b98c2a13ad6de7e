#!/usr/bin/env python3
"""Regenerate the committed test fixtures under tests/fixtures/.

All content is seeded, so re-running this script reproduces the files
byte for byte.
"""

from __future__ import annotations

import pathlib

import numpy as np

from ddikg.rc import DEFAULT_CLASSES, InstanceDataset, RcInstance, write_instances

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

TRIPLES = """\
# synthetic five-relation graph
DB001\tdrug-target\tP01
DB002\tdrug-target\tP01
DB003\tdrug-target\tP02
DB004\tdrug-target\tP03
DB005\tdrug-target\tP04
DB006\tdrug-target\tP02
P01\ttarget-target\tP02
P03\ttarget-target\tP04
DB001\tdrug-disease\tMESH01
DB002\tdrug-disease\tMESH02
DB004\tdrug-disease\tMESH03
DB006\tdrug-disease\tMESH01
MESH01\tdisease-disease\tMESH02
MESH02\tdisease-target\tP03
MESH03\tdisease-target\tP04
DB005\tdrug-disease\tMESH02
"""

ENTITY_TYPES = """\
DB001\tdrug
DB002\tdrug
DB003\tdrug
DB004\tdrug
DB005\tdrug
DB006\tdrug
P01\ttarget
P02\ttarget
P03\ttarget
P04\ttarget
MESH01\tdisease
MESH02\tdisease
MESH03\tdisease
"""

DRUG_NAMES = """\
aspirin\tDB001
acetylsalicylic acid\tDB001
warfarin\tDB002
coumadin\tDB002
metformin hydrochloride\tDB003
ibuprofen\tDB004
folic acid\tDB005
heparin sodium\tDB006
"""

WORDVEC_TOKENS = (
    "aspirin",
    "warfarin",
    "coumadin",
    "metformin",
    "hydrochloride",
    "ibuprofen",
    "folic",
    "acid",
    "heparin",
    "sodium",
    "tablets",
)

DIM = 8
SEQ_LEN = 6

#: (instance id, label, drug ids or None, mentions)
INSTANCE_PLAN = [
    ("s1", "Mechanism", "DB001", "DB002", "aspirin", "warfarin"),
    ("s2", "Effect", "DB002", "DB004", "warfarin", "ibuprofen"),
    ("s3", "Advice", "DB001", "DB004", "aspirin", "ibuprofen"),
    ("s4", "Int", "DB003", "DB005", "metformin", "folic acid"),
    ("s5", "Other", "DB005", "DB006", "folic acid", "heparin"),
    ("s6", "Mechanism", None, "DB002", "acetylsalicylic acid tablets", "coumadin"),
    ("s7", "Effect", "DB006", None, "heparin sodium", "warfarin"),
    ("s8", "Advice", None, None, "aspirin", "metformin hydrochloride"),
    ("s9", "Int", "DB004", "DB001", "ibuprofen", "aspirin"),
    ("s10", "Other", None, "DB003", "xyzzyol", "metformin"),
    ("s11", "Effect", "DB002", "DB005", "coumadin", "folic acid"),
    ("s12", "Mechanism", "DB004", "DB006", "ibuprofen", "heparin sodium"),
]


def make_wordvecs() -> str:
    rng = np.random.default_rng(20)
    lines = [f"{len(WORDVEC_TOKENS)} {DIM}"]
    for token in WORDVEC_TOKENS:
        values = rng.uniform(-0.4, 0.4, size=DIM)
        lines.append(token + " " + " ".join(f"{v:.4f}" for v in values))
    return "\n".join(lines) + "\n"


def make_instances() -> InstanceDataset:
    rng = np.random.default_rng(21)
    class_index = {c: i for i, c in enumerate(DEFAULT_CLASSES)}
    instances = []
    for inst_id, label, drug1, drug2, mention1, mention2 in INSTANCE_PLAN:
        hidden = rng.normal(scale=0.1, size=(SEQ_LEN, DIM))
        hidden[:, class_index[label]] += 2.0  # separable text signal
        instances.append(
            RcInstance(
                id=inst_id,
                hidden=hidden,
                span1=(1, 2),
                span2=(3, 4),
                mention1=mention1,
                mention2=mention2,
                drug1=drug1,
                drug2=drug2,
                label=label,
            )
        )
    return InstanceDataset(instances=tuple(instances), classes=DEFAULT_CLASSES, dim=DIM)


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "triples.tsv").write_text(TRIPLES, encoding="utf-8")
    (FIXTURES / "entity_types.tsv").write_text(ENTITY_TYPES, encoding="utf-8")
    (FIXTURES / "drug_names.tsv").write_text(DRUG_NAMES, encoding="utf-8")
    (FIXTURES / "wordvecs.txt").write_text(make_wordvecs(), encoding="utf-8")
    write_instances(make_instances(), FIXTURES / "instances.jsonl")
    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()
