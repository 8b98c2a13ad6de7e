"""Shared vocabulary and sentence plan for the exporter fixtures.

The tiny test encoder's wordpiece vocabulary and the fixture sentences are
kept together so token counts stay predictable: every word below maps to
exactly one token.
"""

WORDS = (
    "aspirin",
    "warfarin",
    "ibuprofen",
    "metformin",
    "heparin",
    "coumadin",
    "digoxin",
    "insulin",
    "the",
    "of",
    "with",
    "and",
    "increases",
    "decreases",
    "effect",
    "plasma",
    "levels",
    "risk",
    "bleeding",
    "taken",
    "together",
    "should",
    "not",
    "be",
    "avoid",
    "combination",
    "may",
    "interact",
    "patients",
    "dose",
    "reduce",
    "when",
    "is",
    "given",
    "concurrent",
    "use",
    "caution",
    "reported",
    "no",
    "was",
)

#: (id, sentence, entity1 word, entity2 word, label, drug1, drug2)
SENTENCES = (
    ("r1", "aspirin increases the effect of warfarin",
     "aspirin", "warfarin", "Effect", "DB001", "DB002"),
    ("r2", "warfarin taken with ibuprofen increases bleeding risk",
     "warfarin", "ibuprofen", "Mechanism", "DB002", "DB004"),
    ("r3", "avoid the combination of metformin and heparin",
     "metformin", "heparin", "Advice", "DB003", "DB006"),
    ("r4", "coumadin may interact with aspirin",
     "coumadin", "aspirin", "Int", "DB002", "DB001"),
    ("r5", "digoxin was given with insulin and no interact was reported",
     "digoxin", "insulin", "Other", "", ""),
    ("r6", "heparin increases bleeding risk when taken with ibuprofen",
     "heparin", "ibuprofen", "Effect", "DB006", "DB004"),
    ("r7", "metformin decreases plasma levels of digoxin",
     "metformin", "digoxin", "Mechanism", "DB003", ""),
    ("r8", "reduce the dose of insulin when aspirin is given",
     "insulin", "aspirin", "Advice", "", "DB001"),
    ("r9", "concurrent use of coumadin and heparin should be taken with caution",
     "coumadin", "heparin", "Int", "DB002", "DB006"),
    ("r10", "patients taken ibuprofen and metformin reported no effect",
     "ibuprofen", "metformin", "Other", "DB004", "DB003"),
)

#: One sentence whose second entity sits beyond the 300-token budget.
OVERLENGTH_ID = "long1"
OVERLENGTH_FILLER_COUNT = 320


def _line(ident, sentence, w1, w2, label, drug1, drug2):
    s1 = sentence.index(w1)
    s2 = sentence.index(w2)
    return "\t".join(
        [
            ident,
            sentence,
            str(s1),
            str(s1 + len(w1)),
            str(s2),
            str(s2 + len(w2)),
            label,
            drug1,
            drug2,
        ]
    )


def raw_tsv() -> str:
    return "\n".join(_line(*row) for row in SENTENCES) + "\n"


def overlength_tsv() -> str:
    filler = " ".join(["patients"] * OVERLENGTH_FILLER_COUNT)
    sentence = f"aspirin {filler} warfarin"
    e2_start = sentence.index("warfarin")
    line = "\t".join(
        [
            OVERLENGTH_ID,
            sentence,
            "0",
            str(len("aspirin")),
            str(e2_start),
            str(e2_start + len("warfarin")),
            "Effect",
            "DB001",
            "DB002",
        ]
    )
    return line + "\n"
