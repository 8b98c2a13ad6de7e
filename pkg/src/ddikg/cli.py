"""Command-line interface tying the pipeline together.

Subcommands: ``kg-stats``, ``kge-train``, ``kge-eval``, ``kge-export``,
``rc-train``, ``rc-eval``, ``rc-predict``.  Every option can also be set in
a ``key = value`` config file passed with ``--config``; explicit flags win.
The fully resolved configuration is echoed to standard error.  Exit codes:
0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from typing import Callable, Sequence

from .errors import CliUsageError, DdiKgError
from .formats import iter_tsv, open_text
from .graph import BIO_KG_SCHEMA, format_stats, load_graph, load_schema, stats
from .kge import (
    DrugEmbedding,
    KgeConfig,
    export_embeddings,
    format_report,
    load_embeddings,
    load_kge_model,
    rank_triples,
    save_kge_model,
    train,
    write_report_kv,
)
from .linking import build_lexicon, link_instances, load_word_vectors
from .rc import (
    RcTrainConfig,
    evaluate,
    format_metrics,
    load_rc_params,
    predict_batch,
    read_instances,
    save_rc_params,
    train_rc,
    write_metrics,
    write_predictions,
)

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage problems as exit-code-1 errors."""

    def error(self, message):
        raise CliUsageError(f"{self.format_usage().rstrip()}\n{self.prog}: {message}")


class _Command:
    def __init__(self, subparsers, name: str, help_text: str):
        self.name = name
        self.parser = subparsers.add_parser(name, help=help_text)
        self.types: dict[str, Callable] = {}
        self.defaults: dict[str, object] = {}
        self.required: set[str] = set()

    def add(
        self,
        flag: str,
        *,
        type: Callable = str,
        default=None,
        required: bool = False,
        choices=None,
        help: str = "",
    ) -> None:
        dest = flag.lstrip("-").replace("-", "_")
        self.types[dest] = type
        self.defaults[dest] = default
        if required:
            self.required.add(dest)
        self.parser.add_argument(flag, dest=dest, type=type, choices=choices,
                                 default=None, help=help)

    def add_mode_flags(self, flags: dict[str, str], dest: str, default: str) -> None:
        self.types[dest] = str
        self.defaults[dest] = default
        for flag, value in flags.items():
            self.parser.add_argument(
                flag, dest=dest, action="store_const", const=value, default=None
            )


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise CliUsageError(f"cannot parse {text!r} as a boolean")


def _read_config_file(path: str, command: _Command) -> dict[str, object]:
    values: dict[str, object] = {}
    with open_text(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CliUsageError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            dest = key.strip().replace("-", "_")
            if dest not in command.types:
                raise CliUsageError(
                    f"{path}:{lineno}: unknown option {key.strip()!r} for {command.name}"
                )
            caster = command.types[dest]
            if caster is bool:
                caster = _parse_bool
            try:
                values[dest] = caster(value.strip())
            except (ValueError, TypeError) as exc:
                raise CliUsageError(f"{path}:{lineno}: bad value for {key.strip()!r}: {exc}")
    return values


def _resolve(command: _Command, args: argparse.Namespace) -> dict[str, object]:
    resolved = dict(command.defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        resolved.update(_read_config_file(config_path, command))
    for dest in command.types:
        cli_value = getattr(args, dest, None)
        if cli_value is not None:
            resolved[dest] = cli_value
    missing = [d for d in sorted(command.required) if resolved.get(d) is None]
    if missing:
        flags = ", ".join("--" + d.replace("_", "-") for d in missing)
        raise CliUsageError(
            f"{command.parser.format_usage().rstrip()}\n"
            f"ddikg {command.name}: missing required option(s): {flags}"
        )
    for key in sorted(resolved):
        print(f"[config] {command.name}.{key} = {resolved[key]}", file=sys.stderr)
    return resolved


def _load_schema_arg(schema: str | None):
    if schema is None or schema == "infer":
        return None
    if schema == "bio-kg":
        return BIO_KG_SCHEMA
    return load_schema(schema)


def _load_graph_opts(opts) -> "KnowledgeGraph":
    return load_graph(opts["triples"], opts["types"], schema=_load_schema_arg(opts.get("schema")))


# -- subcommand implementations -------------------------------------------


def _cmd_kg_stats(opts) -> int:
    graph = _load_graph_opts(opts)
    print(format_stats(stats(graph)))
    return 0


def _cmd_kge_train(opts) -> int:
    graph = _load_graph_opts(opts)
    config = KgeConfig(
        model=opts["model"],
        dim=opts["dim"],
        relation_dim=opts.get("relation_dim"),
        learning_rate=opts["lr"],
        epochs=opts["epochs"],
        margin=opts["margin"],
        negatives=opts["negatives"],
        norm=opts["norm"],
        seed=opts["seed"],
        batch_size=opts["batch_size"],
    )
    if opts.get("log"):
        with open(opts["log"], "w", encoding="utf-8") as log:
            params = train(graph, config, log=log)
    else:
        params = train(graph, config, log=sys.stderr)
    save_kge_model(opts["out"], params, config.model, config.norm, graph)
    logger.info("saved %s model to %s", config.model, opts["out"])
    return 0


def _cmd_kge_eval(opts) -> int:
    saved = load_kge_model(opts["params"])
    all_graph = load_graph(opts["all"], _types_stream(saved), schema=saved.relation_signatures)
    test_graph = load_graph(opts["test"], _types_stream(saved), schema=saved.relation_signatures)
    report = rank_triples(
        saved.params, saved.model, test_graph, all_graph, mode=opts["mode"], norm=saved.norm
    )
    print(format_report(report))
    if opts.get("out"):
        write_report_kv(report, opts["out"])
    return 0


def _types_stream(saved):
    buffer = io.StringIO()
    for entity, kind in saved.entities.items():
        buffer.write(f"{entity}\t{kind}\n")
    buffer.seek(0)
    return buffer


def _cmd_kge_export(opts) -> int:
    saved = load_kge_model(opts["params"])
    index = {entity: i for i, entity in enumerate(saved.entities)}
    embeddings = []
    for _, (entity, kind) in iter_tsv(opts["types"], 2):
        if kind.strip().lower() != "drug":
            continue
        entity = entity.strip()
        if entity not in index:
            raise DdiKgError(f"drug {entity!r} is not covered by the trained model")
        embeddings.append(DrugEmbedding(entity=entity, vector=saved.params.entities[index[entity]]))
    count = export_embeddings(embeddings, opts["out"])
    logger.info("wrote %d embedding rows to %s", count, opts["out"])
    return 0


def _rc_resources(opts):
    lookup = load_embeddings(opts["embeddings"]) if opts.get("embeddings") else None
    lexicon = build_lexicon(opts["names"]) if opts.get("names") else None
    fallback = load_word_vectors(opts["wordvecs"]) if opts.get("wordvecs") else None
    return lookup, lexicon, fallback


def _prepare_instances(dataset, lexicon):
    instances = list(dataset.instances)
    if lexicon is not None:
        instances = link_instances(instances, lexicon)
    return instances


def _cmd_rc_train(opts) -> int:
    dataset = read_instances(opts["instances"], max_length=opts["max_len"])
    lookup, lexicon, fallback = _rc_resources(opts)
    if opts["mode"] == "fused" and lookup is None and fallback is None:
        raise CliUsageError(
            "fused mode needs --embeddings and/or --wordvecs to resolve drug vectors"
        )
    instances = _prepare_instances(dataset, lexicon)
    config = RcTrainConfig(
        mode=opts["mode"],
        epochs=opts["epochs"],
        learning_rate=opts["lr"],
        batch_size=opts["batch_size"],
        seed=opts["seed"],
        fused_dim=opts.get("fused_dim"),
    )
    if opts.get("log"):
        with open(opts["log"], "w", encoding="utf-8") as log:
            params = train_rc(instances, config, classes=dataset.classes,
                              kge_lookup=lookup, fallback=fallback, log=log)
    else:
        params = train_rc(instances, config, classes=dataset.classes,
                          kge_lookup=lookup, fallback=fallback, log=sys.stderr)
    save_rc_params(opts["out"], params, config.mode)
    logger.info("saved %s-mode classifier to %s", config.mode, opts["out"])
    return 0


def _cmd_rc_eval(opts) -> int:
    params, mode = load_rc_params(opts["params"])
    dataset = read_instances(opts["instances"], max_length=opts["max_len"])
    lookup, lexicon, fallback = _rc_resources(opts)
    instances = _prepare_instances(dataset, lexicon)
    report = evaluate(instances, params, mode, kge_lookup=lookup, fallback=fallback)
    print(format_metrics(report))
    if opts.get("out"):
        write_metrics(report, opts["out"])
    return 0


def _cmd_rc_predict(opts) -> int:
    params, mode = load_rc_params(opts["params"])
    dataset = read_instances(opts["instances"], max_length=opts["max_len"])
    lookup, lexicon, fallback = _rc_resources(opts)
    instances = _prepare_instances(dataset, lexicon)
    labels, probs = predict_batch(instances, params, mode, kge_lookup=lookup, fallback=fallback)
    write_predictions([inst.id for inst in instances], labels, probs, opts["out"])
    logger.info("wrote %d predictions to %s", len(labels), opts["out"])
    return 0


# -- parser construction ---------------------------------------------------


def _build_commands():
    parser = _ArgumentParser(
        prog="ddikg",
        description="Knowledge-graph embeddings and KG-fused DDI relation classification.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands: dict[str, tuple[_Command, Callable]] = {}

    def new(name, help_text, fn) -> _Command:
        cmd = _Command(subparsers, name, help_text)
        cmd.add("--config", help="key = value config file; flags override it")
        commands[name] = (cmd, fn)
        return cmd

    cmd = new("kg-stats", "node and edge counts of a graph", _cmd_kg_stats)
    cmd.add("--triples", required=True, help="triples.tsv")
    cmd.add("--types", required=True, help="entity_types.tsv")
    cmd.add("--schema", help="'infer' (default), 'bio-kg', or a signature file")

    cmd = new("kge-train", "train knowledge-graph embeddings", _cmd_kge_train)
    cmd.add("--model", required=True,
            choices=["transe", "transr", "rescal", "distmult"])
    cmd.add("--triples", required=True)
    cmd.add("--types", required=True)
    cmd.add("--schema")
    cmd.add("--dim", type=int, default=200)
    cmd.add("--relation-dim", type=int)
    cmd.add("--lr", type=float, default=0.0001)
    cmd.add("--epochs", type=int, default=300)
    cmd.add("--margin", type=float, default=1.0)
    cmd.add("--negatives", type=int, default=1)
    cmd.add("--norm", default="l2", choices=["l1", "l2"])
    cmd.add("--batch-size", type=int, default=256)
    cmd.add("--seed", type=int, default=0)
    cmd.add("--out", required=True, help="output model file (.npz)")
    cmd.add("--log", help="training-log file (default: stderr)")

    cmd = new("kge-eval", "filtered link-prediction evaluation", _cmd_kge_eval)
    cmd.add("--params", required=True, help="trained model file")
    cmd.add("--test", required=True, help="test triples.tsv")
    cmd.add("--all", required=True, help="full-graph triples.tsv used for filtering")
    cmd.add_mode_flags({"--filtered": "filtered", "--raw": "raw"}, "mode", "filtered")
    cmd.add("--out", help="also write a key<TAB>value report file")

    cmd = new("kge-export", "export drug embeddings to embeddings.tsv", _cmd_kge_export)
    cmd.add("--params", required=True)
    cmd.add("--types", required=True)
    cmd.add("--out", required=True)

    def add_rc_resources(cmd: _Command) -> None:
        cmd.add("--embeddings", help="embeddings.tsv from kge-export")
        cmd.add("--names", help="drug_names.tsv lexicon for unlinked mentions")
        cmd.add("--wordvecs", help="word-vector file for fallback vectors")
        cmd.add("--max-len", type=int, default=300)

    cmd = new("rc-train", "train the relation-classification head", _cmd_rc_train)
    cmd.add("--mode", required=True, choices=["text", "fused"])
    cmd.add("--instances", required=True, help="instances.jsonl")
    add_rc_resources(cmd)
    cmd.add("--epochs", type=int, default=5)
    cmd.add("--lr", type=float, default=0.1)
    cmd.add("--batch-size", type=int, default=32)
    cmd.add("--seed", type=int, default=0)
    cmd.add("--fused-dim", type=int)
    cmd.add("--out", required=True, help="output classifier file (.npz)")
    cmd.add("--log", help="training-log file (default: stderr)")

    cmd = new("rc-eval", "evaluate a trained head (per-class and macro F1)", _cmd_rc_eval)
    cmd.add("--params", required=True)
    cmd.add("--instances", required=True)
    add_rc_resources(cmd)
    cmd.add("--out", help="also write the metrics table to a file")

    cmd = new("rc-predict", "write predictions.tsv for a trained head", _cmd_rc_predict)
    cmd.add("--params", required=True)
    cmd.add("--instances", required=True)
    add_rc_resources(cmd)
    cmd.add("--out", required=True)

    return parser, commands


def run(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    parser, commands = _build_commands()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliUsageError(parser.format_usage().rstrip() + "\nddikg: missing command")
        command, fn = commands[args.command]
        opts = _resolve(command, args)
        return fn(opts)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except CliUsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except DdiKgError as exc:
        print(f"ddikg: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ddikg: i/o error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
