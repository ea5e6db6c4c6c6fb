"""Command-line front end.

Every command prints one JSON report (``enumerate`` prints one JSON object
per line).  Exit status: 0 on success, 1 when an axiom or theorem check
fails, 2 on usage, parse or size-guard errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from . import __version__
from .builders import (
    CORPUS_NAMES,
    _parse_json_text,
    lattice_from_json,
    named_lattice,
    resolve_corpus_name,
)
from .core import AxiomReport, LatticeFn, _jsonable
from .drsubmod import (
    check_bidirectional_dr,
    check_downward_dr,
    check_downward_dr_prime,
    check_lattice_submodular,
    check_monotone,
    check_strong_dr,
    check_upward_dr,
)
from .errors import (
    LatticeError,
    LatticeIOError,
    NoWitness,
    NotAnIdeal,
    NotOrderReversing,
    ParseError,
    PreconditionViolated,
    RankAxiomViolated,
    TooLarge,
    UnknownCorpusEntry,
)
from .exchange import check_strong_exchange_family, verify_strong_exchange
from .lattice import Lattice, bits, classify
from .optimize import approximation_report, check_valuated, greedy_valuated, random_strong_dr_functions
from .supermatroid import (
    INDEPENDENCE_VARIANTS,
    RANK_VARIANTS,
    IdealSet,
    check_base,
    check_dependence,
    check_height,
    check_independence,
    check_rank,
    downward_closure,
    iter_supermatroid_masks,
    maximal_mask,
    rank_of,
)
from .theorems import SUITES, applicable_suites, run_suite, verify_corpus

COMMANDS = ("validate", "classify", "check", "enumerate", "verify-theorems", "greedy", "exchange")

AXIOMS = (
    "height", "independence", "rank", "base", "dependence",
    "downward-dr", "upward-dr", "bidirectional-dr", "downward-dr-prime",
    "strong-dr", "lattice-submodular", "monotone", "valuated", "strong-exchange",
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    lattice: str | None = None
    ideal: str | None = None
    bases: str | None = None
    fn: str | None = None
    axiom: str | None = None
    variant: str | None = None
    suite: list[str] = field(default_factory=list)
    k: int | None = None
    seed: int = 0
    jobs: int = 1
    force: bool = False
    timestamp: bool = True
    out: str | None = None
    x: str | None = None
    y: str | None = None
    x_ring: str | None = None
    functions: int = 100


# ----------------------------------------------------------------------
# input resolution


@dataclass
class Loaded:
    lattice: Lattice
    name: str
    ideal: list[str] | None = None
    rank: dict | None = None


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise LatticeIOError(str(e)) from e
    return _parse_json_text(text)


def load_lattice_ref(ref: str) -> Loaded:
    """A JSON file path or a built-in name; files and corpus entries may
    carry an ``ideal`` or ``rank`` that later flags default to."""
    if Path(ref).is_file():
        data = _read_json(ref)
        L = lattice_from_json(data)
        return Loaded(L, Path(ref).stem, data.get("ideal"), data.get("rank"))
    try:
        name = resolve_corpus_name(ref)
    except UnknownCorpusEntry:
        return Loaded(named_lattice(ref), ref)
    from .builders import corpus

    entry = corpus(name)
    return Loaded(entry.lattice, name, list(entry.ideal) if entry.ideal else None, entry.rank)


def _members(data, key: str) -> list[str]:
    if isinstance(data, dict):
        if key in data:
            data = data[key]
        else:
            raise ParseError(None, f'expected a list or an object with "{key}"')
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise ParseError(None, f"{key} must be a list of element identifiers")
    return data


def resolve_ideal(cfg: RunConfig, ld: Loaded, required: bool = True) -> int | None:
    L = ld.lattice
    if cfg.ideal:
        m = L.mask_of(_members(_read_json(cfg.ideal), "ideal"))
    elif cfg.bases:
        bm = L.mask_of(_members(_read_json(cfg.bases), "bases"))
        m = downward_closure(L, bm)
    elif ld.ideal is not None:
        m = L.mask_of(ld.ideal)
    elif required:
        raise UsageError("this command needs --ideal or --bases")
    else:
        return None
    return m


def resolve_bases(cfg: RunConfig, ld: Loaded) -> int:
    L = ld.lattice
    if cfg.bases:
        return L.mask_of(_members(_read_json(cfg.bases), "bases"))
    return maximal_mask(L, resolve_ideal(cfg, ld))


def resolve_fn(cfg: RunConfig, ld: Loaded) -> LatticeFn:
    """``--fn`` is a JSON file, ``height``, or ``random`` (a seeded monotone
    strong DR-submodular function); without it the entry's rank is used,
    else the rank of the given ideal."""
    L = ld.lattice
    if cfg.fn == "height":
        return LatticeFn.height(L)
    if cfg.fn == "random":
        return next(random_strong_dr_functions(L, 1, cfg.seed))
    if cfg.fn:
        data = _read_json(cfg.fn)
        if isinstance(data, dict) and "rank" in data and "values" not in data:
            data = data["rank"]
        return LatticeFn.from_json(L, data)
    if ld.rank is not None:
        return LatticeFn(L, ld.rank)
    m = resolve_ideal(cfg, ld, required=False)
    if m is None:
        raise UsageError("this command needs --fn, --ideal or --bases")
    return rank_of(L, IdealSet(L, mask=m))


# ----------------------------------------------------------------------
# commands


def cmd_validate(cfg: RunConfig) -> tuple[int, Any]:
    ld = load_lattice_ref(cfg.lattice)
    L = ld.lattice
    out = {
        "lattice": ld.name,
        "valid": True,
        "elements": L.n,
        "covers": len(L.covers),
        "bottom": L.bottom,
        "top": L.top,
        "height": L.hgt[L.tp],
        "join_irreducibles": list(L.names(L.ji)),
    }
    return 0, out


def cmd_classify(cfg: RunConfig) -> tuple[int, Any]:
    ld = load_lattice_ref(cfg.lattice)
    return 0, {"lattice": ld.name, "flags": classify(ld.lattice).as_dict()}


def _run_check(cfg: RunConfig, ld: Loaded) -> AxiomReport:
    L = ld.lattice
    ax = cfg.axiom
    if ax == "height":
        return check_height(L, resolve_ideal(cfg, ld))
    if ax == "independence":
        var = cfg.variant or "I2"
        if var not in INDEPENDENCE_VARIANTS:
            raise UsageError(f"--variant must be one of {', '.join(INDEPENDENCE_VARIANTS)}")
        return check_independence(L, resolve_ideal(cfg, ld), var)
    if ax == "base":
        return check_base(L, resolve_bases(cfg, ld))
    if ax == "dependence":
        m = resolve_ideal(cfg, ld)
        return check_dependence(L, ((1 << L.n) - 1) & ~m, cfg.variant or "interval")
    if ax == "strong-exchange":
        return check_strong_exchange_family(L, resolve_bases(cfg, ld))
    f = resolve_fn(cfg, ld)
    if ax == "rank":
        var = cfg.variant or "R3_downward"
        if var not in RANK_VARIANTS:
            raise UsageError(f"--variant must be one of {', '.join(RANK_VARIANTS)}")
        return check_rank(L, f, var)
    if ax == "valuated":
        return check_valuated(L, f, cfg.k)
    table = {
        "downward-dr": check_downward_dr,
        "upward-dr": check_upward_dr,
        "bidirectional-dr": check_bidirectional_dr,
        "downward-dr-prime": check_downward_dr_prime,
        "strong-dr": check_strong_dr,
        "lattice-submodular": check_lattice_submodular,
        "monotone": check_monotone,
    }
    return table[ax](L, f)


def cmd_check(cfg: RunConfig) -> tuple[int, Any]:
    if not cfg.axiom:
        raise UsageError("check needs --axiom")
    ld = load_lattice_ref(cfg.lattice)
    rep = _run_check(cfg, ld)
    return (0 if rep.verdict else 1), {"lattice": ld.name, "report": rep.to_json()}


def cmd_enumerate(cfg: RunConfig) -> tuple[int, Any]:
    ld = load_lattice_ref(cfg.lattice)
    L = ld.lattice
    lines = []
    for m in iter_supermatroid_masks(L, cfg.force):
        lines.append({"ideal": list(L.names(bits(m))), "bases": list(L.names(bits(maximal_mask(L, m))))})
    return 0, lines


def _suite_worker(args):
    ref, suite, seed, force, functions = args
    ld = load_lattice_ref(ref)
    kw: dict[str, Any] = {"force": force}
    if suite == "greedy-constrained":
        kw.update(seed=seed, n_functions=functions)
    return run_suite(suite, ld.lattice, ld.name, **kw).to_json()


def cmd_verify(cfg: RunConfig) -> tuple[int, Any]:
    ld = load_lattice_ref(cfg.lattice)
    suites = cfg.suite or applicable_suites(ld.lattice)
    results = []
    tasks = []
    for s in suites:
        if s == "corpus":
            try:
                name = resolve_corpus_name(cfg.lattice)
            except UnknownCorpusEntry:
                raise UsageError("--suite corpus needs a corpus lattice name") from None
            results.append((s, verify_corpus(name).to_json()))
        elif s in SUITES:
            tasks.append(s)
        else:
            raise UsageError(f"unknown suite {s!r}; choose from corpus, {', '.join(SUITES)}")
    args = [(cfg.lattice, s, cfg.seed, cfg.force, cfg.functions) for s in tasks]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            outs = list(ex.map(_suite_worker, args))
    else:
        outs = [_suite_worker(a) for a in args]
    results.extend(zip(tasks, outs))
    order = {s: i for i, s in enumerate(suites)}
    results.sort(key=lambda t: order[t[0]])
    ok = all(r["passed"] for _, r in results)
    return (0 if ok else 1), {"lattice": ld.name, "passed": ok, "suites": [r for _, r in results]}


def cmd_greedy(cfg: RunConfig) -> tuple[int, Any]:
    ld = load_lattice_ref(cfg.lattice)
    L = ld.lattice
    f = resolve_fn(cfg, ld)
    if cfg.k is not None:
        tr = greedy_valuated(L, f, cfg.k)
        return 0, {"lattice": ld.name, "mode": "valuated", "k": cfg.k, "trace": tr.to_json()}
    m = resolve_ideal(cfg, ld)
    from .optimize import greedy_constrained

    tr = greedy_constrained(L, f, m)
    rep = approximation_report(L, f, m)
    return 0, {"lattice": ld.name, "mode": "constrained", "trace": tr.to_json(), "approximation": rep.to_json()}


def cmd_exchange(cfg: RunConfig) -> tuple[int, Any]:
    ld = load_lattice_ref(cfg.lattice)
    L = ld.lattice
    bm = resolve_bases(cfg, ld)
    given = [cfg.x, cfg.y, cfg.x_ring]
    if any(given) and not all(given):
        raise UsageError("give all of --x, --y and --x-ring, or none")
    if all(given):
        try:
            wit = verify_strong_exchange(L, bm, cfg.x, cfg.y, cfg.x_ring)
        except NoWitness as ex:
            return 1, {"lattice": ld.name, "refuted": str(ex)}
        return 0, {"lattice": ld.name, "witness": wit.to_json()}
    rep = check_strong_exchange_family(L, bm)
    return (0 if rep.verdict else 1), {"lattice": ld.name, "report": rep.to_json()}


HANDLERS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "verify-theorems": cmd_verify,
    "greedy": cmd_greedy,
    "exchange": cmd_exchange,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a configuration; returns the exit status and the text to emit."""
    try:
        if not cfg.lattice:
            raise UsageError("--lattice is required")
        status, result = HANDLERS[cfg.command](cfg)
    except (UsageError, ParseError, LatticeError, LatticeIOError, TooLarge, UnknownCorpusEntry,
            PreconditionViolated, NotAnIdeal, RankAxiomViolated, NotOrderReversing) as ex:
        msg = ex.args[0] if isinstance(ex, KeyError) and ex.args else str(ex)
        return 2, f"error: {type(ex).__name__}: {msg}"
    if cfg.command == "enumerate":
        return status, "".join(json.dumps(x, ensure_ascii=False) + "\n" for x in result)
    doc = {"command": cfg.command, "version": __version__}
    if cfg.timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    doc["result"] = _jsonable(result)
    return status, json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supermatroids", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--lattice", required=True,
                        help="JSON file or built-in name (boolean_N, diamond_K, subspace_Q_N, "
                             f"chain_K, pentagon, {', '.join(n.split('_')[0] for n in CORPUS_NAMES)})")
        sp.add_argument("--no-timestamp", dest="timestamp", action="store_false")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--force", action="store_true", help="lift the enumeration size guard")

    def inputs(sp):
        sp.add_argument("--ideal", help="JSON list (or object with \"ideal\") of independent elements")
        sp.add_argument("--bases", help="JSON list (or object with \"bases\") of bases")
        sp.add_argument("--fn", help="JSON function file, 'height' or 'random'")
        sp.add_argument("--seed", type=int, default=0)

    for name in ("validate", "classify"):
        common(sub.add_parser(name))
    sp = sub.add_parser("check")
    common(sp)
    inputs(sp)
    sp.add_argument("--axiom", choices=AXIOMS, required=True)
    sp.add_argument("--variant")
    sp.add_argument("--k", type=int)
    sp = sub.add_parser("enumerate")
    common(sp)
    sp = sub.add_parser("verify-theorems")
    common(sp)
    sp.add_argument("--suite", action="append", default=[],
                    help=f"repeatable; one of corpus, {', '.join(SUITES)} (default: all that apply)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--functions", type=int, default=100, help="sampled functions for greedy-constrained")
    sp.add_argument("--jobs", type=int, default=1)
    sp = sub.add_parser("greedy")
    common(sp)
    inputs(sp)
    sp.add_argument("--k", type=int, help="run the valuated greedy for k steps")
    sp = sub.add_parser("exchange")
    common(sp)
    inputs(sp)
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--x-ring", dest="x_ring")
    return p


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    known = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in known})
    status, text = run(cfg)
    if status == 2 and text.startswith("error:"):
        print(text, file=sys.stderr)
        return status
    if cfg.out:
        try:
            Path(cfg.out).write_text(text, encoding="utf-8")
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
