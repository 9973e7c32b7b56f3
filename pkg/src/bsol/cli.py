"""Command line surface: one JSON report per invocation.

Exit codes: 0 for ok (capped results included, they are explicit), 2 when
a verification mismatches or a forest fails to close, 1 for usage errors.
Reports are deterministic for fixed flags; --timing adds wall time and is
the only nondeterministic field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import golden, limits, orbit
from .fuse import u_poly, v_norm
from .necklaces import check_word, cycle_length
from .polyrat import poly_to_json, ratfn_to_json, series_coeffs


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; the contract reserves 2 for mismatches
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _require_primitive(word: str) -> str:
    check_word(word)
    if cycle_length(word) != len(word):
        raise _UsageError(f"necklace {word} is not primitive")
    return word


def _emit(report: dict, args: argparse.Namespace, started: float) -> None:
    if getattr(args, "timing", False):
        report["elapsed_seconds"] = round(time.monotonic() - started, 3)
    if getattr(args, "tsv", False) and "tsv" in report:
        text = report["tsv"]
    else:
        report.pop("tsv", None)
        text = json.dumps(report, indent=1) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _status_exit(status: str) -> int:
    return 2 if status in ("mismatch", "non-closing") else 0


# --- subcommand handlers ----------------------------------------------------------


def _cmd_orbit(args) -> dict:
    word = _require_primitive(args.necklace)
    dig = orbit.build_orbit(word, args.power, args.max_states)
    return {
        "command": "orbit",
        "necklace": word,
        "power": args.power,
        "size": str(dig.size),
        "depth": dig.depth(),
        "kernel": "structural",
        "status": "ok",
    }


def _cmd_dseries(args) -> dict:
    word = _require_primitive(args.necklace)
    series = orbit.d_series(word, args.power, args.max_states)
    coeffs = [str(series.coeff(e)) for e in range(series.degree + 1)]
    return {
        "command": "dseries",
        "necklace": word,
        "power": args.power,
        "d_series": coeffs,
        "size": str(sum(int(c) for c in coeffs)),
        "kernel": orbit.kernel_name(),
        "status": "ok",
    }


def _cmd_hseries(args) -> dict:
    word = _require_primitive(args.necklace)
    res = orbit.stabilized_h_series(word, args.coeffs, args.max_k, args.max_states)
    status = "ok" if res.stabilized else "capped"
    report = {
        "command": "hseries",
        "necklace": word,
        "coeffs": args.coeffs,
        "max_power": args.max_k,
        "coefficients": [str(c) for c in res.coeffs],
        "power_used": res.power_used,
        "stabilized": res.stabilized,
        "status": status,
    }
    if not res.stabilized:
        report["reason"] = f"not stabilized at cap ({res.reason})"
    return report


def _cmd_hlimit(args) -> dict:
    word = _require_primitive(args.necklace)
    report = {"command": "hlimit", "necklace": word}
    try:
        h = limits.h_limit(word, args.depth_cap)
    except limits.NonClosingError as e:
        report["status"] = "non-closing"
        report["detail"] = str(e)
        return report
    report["h"] = ratfn_to_json(h)
    report["series"] = [str(c) for c in series_coeffs(h, 7)]
    report["status"] = "ok"
    return report


def _cmd_ufuse(args) -> dict:
    def laurent_json(p):
        return {"coeffs": {str(e): str(c) for e, c in sorted(p.coeffs.items())}}

    ks = list(range(args.max_k + 1))
    return {
        "command": "ufuse",
        "max_k": args.max_k,
        "u": [poly_to_json(u_poly(k)) for k in ks],
        "v_normalized": [laurent_json(v_norm(k)) for k in ks],
        "status": "ok",
    }


def _cmd_cratio(args) -> dict:
    word = _require_primitive(args.necklace)
    if len(word) < 3:
        raise _UsageError("cratio needs a necklace of size >= 3")
    probe = orbit.c_ratio_probe(word, args.max_k, args.max_states)
    rows = []
    for k in range(1, args.max_k + 1):
        if k <= len(probe["sizes"]):
            rows.append({"k": k, "size": str(probe["sizes"][k - 1])})
        else:
            rows.append({"k": k, "size": None, "note": "skipped: capped"})
    return {
        "command": "cratio",
        "necklace": word,
        "max_power": args.max_k,
        "rows": rows,
        "ratio": None if probe["ratio"] is None else str(probe["ratio"]),
        "status": "ok" if not probe["skipped"] else "capped",
    }


def _verify_thm12(args) -> dict:
    results = []
    ok = True
    for k in range(1, args.max_k + 1):
        w1, w2 = "B" + "WB" * k, "W" + "BW" * k
        iso = limits.verify_tree_isomorphism(w1, w2, args.depth)
        equal_h = limits.h_limit(w1) == limits.h_limit(w2)
        ok = ok and iso and equal_h
        results.append(
            {"k": k, "pair": [w1, w2], "isomorphic": iso, "equal_h": equal_h}
        )
    return {
        "command": "verify",
        "check": "thm12",
        "depth": args.depth,
        "results": results,
        "status": "ok" if ok else "mismatch",
    }


def _verify_thm13(args) -> dict:
    results = []
    ok = True
    for k in range(2, args.max_k + 1):
        f, p = limits.f_poly(k), limits.p_poly(k)
        equal, degree_ok = f == p, f.degree == k + 1
        ok = ok and equal and degree_ok
        results.append(
            {"k": k, "equal": equal, "degree": f.degree, "degree_ok": degree_ok}
        )
    return {
        "command": "verify",
        "check": "thm13",
        "max_k": args.max_k,
        "results": results,
        "status": "ok" if ok else "mismatch",
    }


def _verify_conj11(args) -> dict:
    results = []
    ok = True
    for w1, w2 in golden.dual_pairs():
        rep = limits.verify_same_denominator(w1, w2, args.depth_cap)
        ok = ok and rep["equal_denominator"]
        results.append({"pair": [w1, w2], **rep})
    return {
        "command": "verify",
        "check": "conj11",
        "pairs": len(results),
        "results": results,
        "status": "ok" if ok else "mismatch",
    }


def _verify_conj64(args) -> dict:
    # rows sharing a conjectural ratio should share a denominator
    by_c: dict[tuple[int, int], list[str]] = {}
    for row in golden.size_rows():
        by_c.setdefault((row.size, row.c), []).append(row.necklace)
    results = []
    ok = True
    for (size, c), words in sorted(by_c.items()):
        if len(words) < 2:
            continue
        try:
            dens = [limits.h_limit(w).den for w in words]
            equal = all(d == dens[0] for d in dens)
            ok = ok and equal
            results.append(
                {"size": size, "c": str(c), "necklaces": words, "equal_denominator": equal}
            )
        except limits.NonClosingError:
            results.append(
                {"size": size, "c": str(c), "necklaces": words, "note": "skipped: capped"}
            )
    return {
        "command": "verify",
        "check": "conj64",
        "results": results,
        "status": "ok" if ok else "mismatch",
    }


def _verify_lemma216(args) -> dict:
    word = _require_primitive(args.necklace)
    holds = orbit.forest_identity_check(word, args.power, args.coeffs, args.max_states)
    return {
        "command": "verify",
        "check": "lemma216",
        "necklace": word,
        "power": args.power,
        "coeffs": args.coeffs,
        "holds": holds,
        "status": "ok" if holds else "mismatch",
    }


def _verify_brandt(args) -> dict:
    from .necklaces import (
        distinct_rotations,
        forward_move,
        necklace_representatives,
        word_partition,
    )

    results = []
    ok = True
    for m in range(1, args.max_size + 1):
        for word in necklace_representatives(m):
            images = {word_partition(w) for w in distinct_rotations(word)}
            # the actual cycle: iterate the forward move until it repeats
            cycle = []
            lam = word_partition(word)
            while lam not in cycle:
                cycle.append(lam)
                lam = forward_move(lam)
            match = images == set(cycle)
            ok = ok and match
            if not match:
                results.append({"necklace": word, "match": False})
    return {
        "command": "verify",
        "check": "brandt",
        "max_size": args.max_size,
        "checked": sum(
            len(necklace_representatives(m)) for m in range(1, args.max_size + 1)
        ),
        "mismatches": results,
        "status": "ok" if ok else "mismatch",
    }


def _cmd_tables(args) -> dict:
    size_rows = []
    tsv_lines = ["necklace\tc_P\tsize_formula\tverified_k"]
    for row in golden.size_rows():
        if row.size > args.max_size:
            continue
        counts = [str(row.count_at(k)) for k in range(1, args.max_power + 1)]
        verified = "all" if row.proved else str(row.verified_k)
        size_rows.append(
            {
                "necklace": row.necklace,
                "size": row.size,
                "c": str(row.c),
                "first": str(row.first),
                "formula": row.formula(),
                "verified_k": verified,
                "counts": counts,
            }
        )
        tsv_lines.append(f"{row.necklace}\t{row.c}\t{row.formula()}\t{verified}")
    h_rows = []
    for e in golden.h_table():
        if e.size > args.max_size:
            continue
        h_rows.append(
            {
                "necklace": e.necklace,
                "size": e.size,
                "num": [str(e.num.coeff(i)) for i in range(e.num.degree + 1)],
                "den": [str(e.den.coeff(i)) for i in range(e.den.degree + 1)],
            }
        )
    return {
        "command": "tables",
        "max_size": args.max_size,
        "max_power": args.max_power,
        "size_rows": size_rows,
        "h_rows": h_rows,
        "status": "ok",
        "tsv": "\n".join(tsv_lines) + "\n",
    }


# --- argument wiring --------------------------------------------------------------


def _build_parser() -> _Parser:
    p = _Parser(prog="bs", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, necklace=False, power=False, states=False, out=True):
        if necklace:
            sp.add_argument("--necklace", required=True, help="necklace word over B/W")
        if power:
            sp.add_argument("--power", type=int, default=1, help="repeat count of the necklace")
        if states:
            sp.add_argument(
                "--max-states", type=int, default=None,
                help="state cap for the census (env BS_MAX_STATES overrides the default)",
            )
        if out:
            sp.add_argument("--out", default=None, help="write the report here instead of stdout")
            sp.add_argument("--timing", action="store_true", help="include wall time in the report")

    sp = sub.add_parser("orbit", help="orbit size of necklace^power")
    common(sp, necklace=True, power=True, states=True)
    sp.set_defaults(fn=_cmd_orbit)

    sp = sub.add_parser("dseries", help="level census of one orbit")
    common(sp, necklace=True, power=True, states=True)
    sp.set_defaults(fn=_cmd_dseries)

    sp = sub.add_parser("hseries", help="stabilized leading census coefficients")
    common(sp, necklace=True, states=True)
    sp.add_argument("--coeffs", type=int, default=5, help="highest series index to stabilize")
    sp.add_argument("--max-k", type=int, default=orbit.DEFAULT_MAX_POWER, help="power cap")
    sp.set_defaults(fn=_cmd_hseries)

    sp = sub.add_parser("hlimit", help="closed form of the limit series")
    common(sp, necklace=True)
    sp.add_argument("--depth-cap", type=int, default=None, help="expansion depth cap")
    sp.set_defaults(fn=_cmd_hlimit)

    sp = sub.add_parser("ufuse", help="fuse level-census polynomials")
    common(sp)
    sp.add_argument("--max-k", type=int, default=8, help="largest fuse size")
    sp.set_defaults(fn=_cmd_ufuse)

    sp = sub.add_parser("cratio", help="orbit growth ratios across powers")
    common(sp, necklace=True, states=True)
    sp.add_argument("--max-k", type=int, default=3, help="largest power to census")
    sp.set_defaults(fn=_cmd_cratio)

    sp = sub.add_parser("verify", help="verification suites")
    vsub = sp.add_subparsers(dest="check", required=True)

    v = vsub.add_parser("thm12", help="alternating-family tree isomorphism")
    common(v)
    v.add_argument("--max-k", type=int, default=2)
    v.add_argument("--depth", type=int, default=6)
    v.set_defaults(fn=_verify_thm12)

    v = vsub.add_parser("thm13", help="denominator polynomial identity")
    common(v)
    v.add_argument("--max-k", type=int, default=10)
    v.set_defaults(fn=_verify_thm13)

    v = vsub.add_parser("conj11", help="dual pairs share a denominator")
    common(v)
    v.add_argument("--depth-cap", type=int, default=None)
    v.set_defaults(fn=_verify_conj11)

    v = vsub.add_parser("conj64", help="equal growth ratio implies equal denominator")
    common(v)
    v.set_defaults(fn=_verify_conj64)

    v = vsub.add_parser("lemma216", help="path counts vs level sums in one orbit")
    common(v, necklace=True, power=True, states=True)
    v.add_argument("--coeffs", type=int, default=4, help="largest path length checked")
    v.set_defaults(fn=_verify_lemma216)

    v = vsub.add_parser("brandt", help="necklace images are the cycle partitions")
    common(v)
    v.add_argument("--max-size", type=int, default=6)
    v.set_defaults(fn=_verify_brandt)

    sp = sub.add_parser("tables", help="emit the reference tables")
    common(sp)
    sp.add_argument("--max-size", type=int, default=8, help="largest necklace size")
    sp.add_argument("--max-power", type=int, default=3, help="powers listed per row")
    sp.add_argument("--tsv", action="store_true", help="emit the size table as TSV")
    sp.set_defaults(fn=_cmd_tables)

    return p


def run(argv: list[str]) -> int:
    started = time.monotonic()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        report = args.fn(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except orbit.OrbitCapped as e:
        report = {
            "command": "orbit",
            "necklace": e.word,
            "power": e.power,
            "max_states": e.max_states,
            "status": "capped",
            "detail": str(e),
        }
        _emit(report, args, started)
        return 0
    _emit(report, args, started)
    return _status_exit(report["status"])


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
