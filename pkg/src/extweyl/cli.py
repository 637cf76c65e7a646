"""Command-line interface.

Subcommands: info, tensor-type, orbits, word, verify.  Exit codes:
0 the command ran to completion, 1 a verification found a mismatch,
2 a usage or input error.  All JSON output carries "schema": 1 and is
byte-stable for a fixed input and seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from extweyl.ext_root import Config, ExtRootError, ExtRootSystem, validate
from extweyl.lattice_algebra import (
    box_quotient,
    coinvariants,
    expected_tensor_descriptor,
)
from extweyl.refl_groups import ReflectionLabel
from extweyl.root_core import RootSystemError, build, k_delta
from extweyl.verify import SUITES, run_suites
from extweyl.weyl import (
    decide_word,
    default_brute_modulus,
    orbit_bruteforce,
    orbit_of,
    slice_residues_mod,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

PAIRS = {
    "root,root": ("root", "root"),
    "root,coroot": ("root", "coroot"),
    "coroot,coroot": ("coroot", "coroot"),
}


def _emit(payload: dict, text_lines: list[str], fmt: str, out_path: str | None):
    if fmt == "json":
        blob = json.dumps(payload, sort_keys=True, indent=2)
    else:
        blob = "\n".join(text_lines)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(blob + "\n")
    else:
        print(blob)


def cmd_info(args) -> int:
    try:
        rs = build(args.family, args.rank)
    except RootSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    counts = {}
    for cls in rs.lengths:
        counts[cls] = counts.get(cls, 0) + 1
    payload = {
        "schema": 1,
        "type": rs.rs_type.family,
        "rank": rs.rank,
        "roots": [list(r) for r in rs.roots],
        "coroots": [list(c) for c in rs.coroots],
        "basis": list(rs.basis),
        "lengths": list(rs.lengths),
        "counts": counts,
        "cartan": [list(r) for r in rs.cartan],
        "divisible_roots": list(rs.divisible_root_indices()),
    }
    lines = [
        f"type {rs.rs_type}: {len(rs.roots)} roots",
        "counts: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())),
        "cartan: " + "; ".join(" ".join(f"{x:3d}" for x in r) for r in rs.cartan),
    ]
    if not rs.rs_type.is_single_length():
        payload["k_delta"] = k_delta(rs.rs_type)
        lines.append(f"lacing number k = {k_delta(rs.rs_type)}")
    if rs.divisible_root_indices():
        lines.append(
            f"divisible roots (doubled short): {len(rs.divisible_root_indices())}"
        )
    _emit(payload, lines, args.format, args.out)
    return EXIT_OK


def cmd_tensor_type(args) -> int:
    try:
        rs = build(args.family, args.rank)
        left, right = PAIRS[args.pair]
    except (RootSystemError, KeyError) as exc:
        print(f"error: bad type or pair ({exc})", file=sys.stderr)
        return EXIT_USAGE
    fp = coinvariants(rs, left, right)
    got = fp.descriptor()
    want = expected_tensor_descriptor(rs.rs_type, left, right)
    box = box_quotient(rs, left, right).descriptor()
    # generator witness: a basis tensor with unit projection if one
    # exists, else an integer combination projecting onto a generator
    l = rs.rank
    witness = None
    proj = {}
    for i in range(l):
        for j in range(l):
            e = [0] * (l * l)
            e[i * l + j] = 1
            free, tors = fp.project(e)
            proj[(i, j)] = (free, tors)
            if witness is None and any(x in (1, -1) for x in free):
                witness = {"basis_pair": [i, j], "projection": list(free) + list(tors)}
    if witness is None and fp.free_rank:
        from extweyl.lattice_algebra import _unit_combination

        gram = tuple(
            tuple(proj[(i, j)][0][0] for j in range(l)) for i in range(l)
        )
        combo = _unit_combination(gram)
        witness = {
            "combination": sorted(
                [i, j, c] for (i, j), c in combo.items() if c
            )
        }
    payload = {
        "schema": 1,
        "type": str(rs.rs_type),
        "rank": rs.rank,
        "pair": args.pair,
        "invariant_factors": fp.invariant_factors,
        "descriptor": got,
        "expected": want,
        "box_descriptor": box,
        "generator_witness": witness,
    }
    lines = [
        f"{rs.rs_type} {args.pair}: {got} (expected {want}); box quotient {box}"
    ]
    _emit(payload, lines, args.format, args.out)
    if got != want:
        print("verification mismatch against the expected table", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _load_system(path: str) -> ExtRootSystem:
    with open(path) as fh:
        data = json.load(fh)
    return ExtRootSystem.from_json(data)


def cmd_orbits(args) -> int:
    try:
        ers = _load_system(args.system)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: cannot load system: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = validate(ers)
    if not rep.ok:
        first = rep.failed()[0]
        print(f"error: system invalid: {first.name} {first.witness}", file=sys.stderr)
        return EXIT_USAGE
    from extweyl.intlinalg import hermite_rows, vec_scale

    m = default_brute_modulus(ers)
    rs = ers.delta
    mod_h = hermite_rows(
        [vec_scale(m, ers.group.basis_vector(i)) for i in range(ers.n)]
    )
    classes = {}
    for beta in range(len(rs.roots)):
        for d in sorted(slice_residues_mod(ers, rs.lengths[beta], mod_h)):
            oc = orbit_of(ers, d, beta)
            key = (oc.length_class, oc.coset)
            classes.setdefault(key, [list(d), beta])
    agree = True
    for key, rep0 in classes.items():
        closure = orbit_bruteforce(ers, tuple(rep0[0]), rep0[1], m)
        for h, b in closure:
            oc = orbit_of(ers, h, b)
            if (oc.length_class, oc.coset) != key:
                agree = False
    payload = {
        "schema": 1,
        "classes": [
            {"length_class": k[0], "coset": list(k[1]), "representative": v}
            for k, v in sorted(classes.items())
        ],
        "bruteforce_agrees": agree,
        "modulus": m,
    }
    lines = [f"{len(classes)} orbit classes (brute-force agreement: {agree})"]
    for k, v in sorted(classes.items()):
        lines.append(f"  {k[0]} coset {list(k[1])} rep {v}")
    _emit(payload, lines, args.format, args.out)
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_word(args) -> int:
    try:
        ers = _load_system(args.system)
        with open(args.word) as fh:
            data = json.load(fh)
        letters = data["word"] if isinstance(data, dict) else data
        word = [
            ReflectionLabel.make(ers, tuple(item["g"]), int(item["alpha"]))
            for item in letters
        ]
        for item, t in zip(letters, word):
            if not ers.membership(tuple(item["g"]), int(item["alpha"])):
                raise ExtRootError(f"letter {item} is not an extended root")
    except (OSError, KeyError, TypeError, ValueError, IndexError) as exc:
        print(f"error: bad input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        decision = decide_word(ers, word)
    except ExtRootError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = decision.to_json()
    lines = [
        f"trivial: {decision.trivial}"
        + ("" if decision.trivial else f" (failing layer {decision.failing_layer})")
    ]
    _emit(payload, lines, args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in list(SUITES) + ["all"]:
        print(
            f"error: unknown suite {args.suite!r}; choose from "
            f"{', '.join(list(SUITES) + ['all'])}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    reports = run_suites(args.suite, seed=args.seed, cap_rank=args.cap_rank)
    payload = {"schema": 1, "seed": args.seed, "suites": []}
    lines = [f"seed {args.seed}"]
    any_fail = False
    for rep in reports:
        payload["suites"].append(
            {
                "suite": rep.suite,
                "ok": rep.ok,
                "cases": [
                    {"name": c.name, "ok": c.ok, "detail": c.detail} for c in rep.cases
                ],
                "reports": rep.reports,
            }
        )
        lines.append(f"[{rep.suite}] {'PASS' if rep.ok else 'FAIL'}")
        for c in rep.cases:
            lines.append(f"  {'pass' if c.ok else 'FAIL'} {c.name}"
                         + (f" ({c.detail})" if c.detail else ""))
        for r in rep.reports:
            lines.append(f"  report: {r}")
        if not rep.ok:
            any_fail = True
            first = rep.first_failure()
            lines.append(
                f"  first witness: {first.name}: {first.detail}"
            )
            lines.append(
                f"  replay: extweyl verify {rep.suite} --seed {args.seed}"
            )
    _emit(payload, lines, args.format, args.out)
    return EXIT_MISMATCH if any_fail else EXIT_OK


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    c.add_argument("--format", choices=["text", "json"], default=d("text"))
    c.add_argument("--seed", type=int, default=d(0), help="seed for randomized suites")
    c.add_argument("--cap-rank", type=int, default=d(6), help="rank cap for sweeps")
    c.add_argument("--out", default=d(None), help="write output to a file")
    return c


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="extweyl",
        description="Exact computations with root systems extended by free abelian groups",
        parents=[_common_flags(defaults=True)],
    )
    sub = p.add_subparsers(dest="command", required=True)
    flags = [_common_flags(defaults=False)]

    q = sub.add_parser("info", help="summary of a finite root system", parents=flags)
    q.add_argument("family", choices=["A", "B", "C", "D", "E", "F", "G", "BC"])
    q.add_argument("rank", type=int)

    q = sub.add_parser(
        "tensor-type", help="coinvariant invariant factors", parents=flags
    )
    q.add_argument("family", choices=["A", "B", "C", "D", "E", "F", "G", "BC"])
    q.add_argument("rank", type=int)
    q.add_argument("pair", choices=sorted(PAIRS))

    q = sub.add_parser(
        "orbits", help="orbit classes of an extended system", parents=flags
    )
    q.add_argument("system", help="path to an extended-system JSON file")

    q = sub.add_parser("word", help="decide a word in the presentation", parents=flags)
    q.add_argument("system", help="path to an extended-system JSON file")
    q.add_argument("word", help="path to a word JSON file")

    q = sub.add_parser("verify", help="run a verification suite", parents=flags)
    q.add_argument("suite", help="tables | tensor | orbits | cocycle | words | all")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(
            output_format=args.format, seed=args.seed, cap_rank=args.cap_rank
        )
    except ExtRootError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    del cfg
    handler = {
        "info": cmd_info,
        "tensor-type": cmd_tensor_type,
        "orbits": cmd_orbits,
        "word": cmd_word,
        "verify": cmd_verify,
    }[args.command]
    return handler(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
