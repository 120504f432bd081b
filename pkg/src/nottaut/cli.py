"""Command-line front end.

Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.
The default working precision is 4096 and can be overridden per-invocation
with -N or globally with the NOTT_PRECISION environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .gf2m import GF4
from .series import DEFAULT_PRECISION, compose
from .towers import TOWER_PARAMS, Tower, TowerSpec, build_tower, central_series, tower_bundle_json
from .ramification import close_group, iso_type, lower_breaks
from .minpoly import BivarPoly, guess_annihilator, is_nonsingular, verify_annihilator
from .christol import CertificationError, oracle_kernel_automaton, poly_to_automaton
from .dfao import AutomatonFormatError, emit_dot, parse_automaton_file
from . import fixtures as fixture_data


class VerificationFailure(RuntimeError):
    pass


def _env_precision() -> int:
    raw = os.environ.get("NOTT_PRECISION")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SystemExit(f"NOTT_PRECISION={raw!r} is not an integer")
    return DEFAULT_PRECISION


def _tower_args(p: argparse.ArgumentParser):
    p.add_argument("--family", required=True, choices=sorted(TOWER_PARAMS))
    p.add_argument("--param", required=True, help="0|s for q8; 1|s|s2 for d4")
    p.add_argument("-N", type=int, default=None, help="working precision (default 4096)")


def _spec(args) -> TowerSpec:
    return TowerSpec(args.family, args.param, args.N or _env_precision())


def _emit(data, out: str | None):
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_tower(args) -> int:
    tower = build_tower(_spec(args))
    if args.pretty:
        lines = [f"# {tower.spec.family} param={tower.spec.param} N={tower.spec.N}"]
        for name in ("Z", "Y", "alpha3", "piK"):
            lines.append(f"{name:8s} = {getattr(tower, name).to_text(max_terms=10)}")
        for name, srs in tower.galois.items():
            lines.append(f"{name:8s} = {srs.to_text(max_terms=10)}")
        text = "\n".join(lines)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return 0
    _emit(tower_bundle_json(tower, terms=args.terms), args.out)
    return 0


def cmd_group(args) -> int:
    tower = build_tower(_spec(args))
    gens = [(n, tower.galois[n]) for n in tower.generators]
    g = close_group(gens)
    # relabel closure elements with the tower's canonical names
    for i, elem in enumerate(g.elements):
        for name, srs in tower.galois.items():
            if elem.eq_prec(srs, min(g.precision, srs.prec)):
                g.names[i] = name
                break
    prof = lower_breaks(g)
    report = {
        "family": tower.spec.family,
        "param": tower.spec.param,
        "precision": g.precision,
        "note": "element orders and breaks are certified at the stated precision",
        "size": len(g),
        "iso_type": iso_type(g).value,
        "order_profile": {str(k): v for k, v in g.order_profile().items()},
        "elements": g.names,
        "orders": {g.names[i]: g.order_of(i) for i in range(len(g))},
        "table": g.table,
        **prof.to_json(),
    }
    _emit(report, args.out)
    return 0


def cmd_minpoly(args) -> int:
    tower = build_tower(_spec(args))
    y = tower.element(args.element)
    f = guess_annihilator(y, args.dx, args.dt, y.prec)
    v, exact = verify_annihilator(f, y)
    residual = str(v) if exact else f">= {v}"
    report = {
        "element": args.element,
        "polynomial": f.to_text(),
        "nonsingular": is_nonsingular(f),
        "residual_valuation": residual,
        "json": f.to_json(),
    }
    _emit(report, args.out)
    return 0 if not exact else 1


def _load_poly(args) -> BivarPoly:
    if args.poly and os.path.exists(args.poly):
        with open(args.poly, "r", encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return BivarPoly.from_json(GF4, json.loads(text))
        return BivarPoly.from_text(GF4, text.strip())
    return BivarPoly.from_text(GF4, args.poly)


def cmd_synth(args) -> int:
    f = _load_poly(args)
    try:
        report = poly_to_automaton(f, args.verify or _env_precision())
    except (CertificationError, ValueError) as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return 1
    _emit(report.to_json(include_automaton=True), args.out)
    return 0


def cmd_synth_oracle(args) -> int:
    n_oracle = args.n_oracle or (1 << 14)
    spec = TowerSpec(args.family, args.param, n_oracle)
    center_names = {"s1^2", "s2^2", "s0^2", "z", "t0^2", "t1^2", "t2^2"}
    if args.element in center_names:
        oracle = central_series(args.family, args.param, n_oracle)
    else:
        oracle = build_tower(spec).element(args.element)
    try:
        report = oracle_kernel_automaton(
            oracle, max_states=args.max_states, probe_len=args.probe_len
        )
    except CertificationError as exc:
        print(f"oracle synthesis failed: {exc}", file=sys.stderr)
        return 1
    _emit(report.to_json(include_automaton=True), args.out)
    return 0


def cmd_eval(args) -> int:
    a = parse_automaton_file(args.automaton)
    print(GF4.to_token(a.eval(args.n)))
    return 0


def cmd_compare(args) -> int:
    a = parse_automaton_file(args.a)
    b = parse_automaton_file(args.b)
    eq, witness = a.equivalent(b)
    if eq:
        print("equivalent")
        return 0
    print(f"not equivalent: outputs differ at n={witness}")
    return 1


def cmd_export_dot(args) -> int:
    a = parse_automaton_file(args.automaton)
    text = emit_dot(a, omit_self_loops=args.omit_self_loops)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def _verify_fixtures(report_dir: str | None, full: bool, N: int) -> int:
    """Parse, validate, synthesize and compare every embedded fixture."""
    rows = []
    failures = 0
    polys = fixture_data.load_polynomials()
    reported = fixture_data.reported_counts()
    towers: dict[str, Tower] = {}

    def tower_for(family, param):
        key = f"{family}:{param}"
        if key not in towers:
            towers[key] = build_tower(TowerSpec(family, param, N))
        return towers[key]

    try:
        entries = fixture_data.load_tables()
    except (AutomatonFormatError, AssertionError, ValueError) as exc:
        print(f"fixture data failed validation: {exc}")
        print("result: FAIL (1)")
        return 1
    for fx in entries:
        key = f"{fx.family}:{fx.param}:{fx.element}"
        tower = tower_for(fx.family, fx.param)
        y = tower.element(fx.element)
        dmax = 2 if key.startswith("q8:0") else 3
        ok_poly = True
        try:
            guessed = guess_annihilator(y, dmax, dmax, min(N, 1024))
            ok_poly = guessed.is_scalar_multiple_of(polys[key])
        except Exception:
            ok_poly = False
        synth = poly_to_automaton(polys[key], min(N, 2048))
        eq, witness = synth.automaton.equivalent(fx.automaton)
        ok = ok_poly and eq
        failures += 0 if ok else 1
        rows.append(
            {
                "name": key,
                "file": f"{fx.file}:{fx.column}",
                "fixture_states": fx.states,
                "minimized": synth.minimized_state_count,
                "reported": reported.get(key, fx.states),
                "poly_match": ok_poly,
                "equivalent": eq,
                "witness": witness,
                "automaton": synth.automaton,
            }
        )

    # frobenius label pairing between fixture files
    by_loc = {(fx.file, fx.column): fx.automaton for fx in entries}
    frob_ok = True
    for fa, ca, fb, cb in fixture_data.frobenius_pairs():
        a, b = by_loc[(fa, ca)], by_loc[(fb, cb)]
        eq, _ = a.frobenius_labels().equivalent(b)
        frob_ok &= eq
        if not eq:
            failures += 1

    if full:
        big = poly_to_automaton(polys["q8:s:s1"], min(N, 4096))
        rows.append(
            {
                "name": "q8:s:s1",
                "file": "(synthesized)",
                "fixture_states": "-",
                "minimized": big.minimized_state_count,
                "reported": reported["q8:s:s1"],
                "poly_match": True,
                "equivalent": "-",
                "witness": None,
                "automaton": big.automaton,
            }
        )

    header = f"{'element':<14} {'fixture':<28} {'tbl':>4} {'min':>5} {'ref':>5} {'poly':<5} {'equiv':<5}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(
            f"{r['name']:<14} {r['file']:<28} {str(r['fixture_states']):>4} "
            f"{r['minimized']:>5} {r['reported']:>5} {str(r['poly_match']):<5} {str(r['equivalent']):<5}"
        )
    lines.append(f"frobenius fixture pairings: {'ok' if frob_ok else 'FAILED'}")
    lines.append(f"result: {'PASS' if failures == 0 else f'FAIL ({failures})'}")
    print("\n".join(lines))

    if report_dir:
        from . import render

        os.makedirs(report_dir, exist_ok=True)
        with open(os.path.join(report_dir, "report.tsv"), "w", encoding="utf-8") as fh:
            fh.write("element\tfixture\ttable_states\tminimized\treference\tpoly_match\tequivalent\twitness\n")
            for r in rows:
                fh.write(
                    "\t".join(
                        str(r[k])
                        for k in (
                            "name",
                            "file",
                            "fixture_states",
                            "minimized",
                            "reported",
                            "poly_match",
                            "equivalent",
                            "witness",
                        )
                    )
                    + "\n"
                )
        for r in rows:
            slug = r["name"].replace(":", "_").replace("^", "").replace("*", "")
            render.draw_automaton(
                r["automaton"], os.path.join(report_dir, f"{slug}.png"), title=r["name"]
            )
        render.draw_state_counts(rows, os.path.join(report_dir, "state_counts.png"))
    return 1 if failures else 0


def cmd_fixtures(args) -> int:
    if args.action != "verify":
        raise SystemExit(2)
    return _verify_fixtures(args.report_dir, args.full, args.N or _env_precision())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nottaut",
        description=(
            "Minimally ramified Q8 and D4 subgroups of the Nottingham group over GF(4): "
            "towers, ramification data, annihilating polynomials, and automata."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tower", help="build a tower and emit its series bundle")
    _tower_args(p)
    p.add_argument("--terms", type=int, default=None, help="limit emitted coefficients")
    p.add_argument("--pretty", action="store_true", help="human-readable series instead of JSON")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_tower)

    p = sub.add_parser("group", help="group table, iso type, depths and breaks")
    _tower_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_group)

    p = sub.add_parser("minpoly", help="recover the annihilating polynomial of an element")
    _tower_args(p)
    p.add_argument("--element", required=True, help="e.g. s1, s2^3, s0^2, t1, z")
    p.add_argument("--dx", type=int, default=3)
    p.add_argument("--dt", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_minpoly)

    p = sub.add_parser("synth", help="automaton of a nonsingular polynomial's root")
    p.add_argument("--poly", required=True, help="file (text or JSON) or inline text")
    p.add_argument("--verify", type=int, default=None, help="verification prefix length")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("synth-oracle", help="kernel-closure automaton from a series oracle")
    _tower_args(p)
    p.add_argument("--element", required=True)
    p.add_argument("--n-oracle", type=int, default=None, help="oracle length (default 2^14)")
    p.add_argument("--probe-len", type=int, default=4096)
    p.add_argument("--max-states", type=int, default=65536)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_synth_oracle)

    p = sub.add_parser("eval", help="evaluate an automaton at an index")
    p.add_argument("--automaton", required=True)
    p.add_argument("--n", required=True, type=int)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("compare", help="exact equivalence of two automata")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("fixtures", help="fixture operations")
    p.add_argument("action", choices=["verify"])
    p.add_argument("-N", type=int, default=None)
    p.add_argument("--full", action="store_true", help="include the large syntheses")
    p.add_argument("--report-dir", default=None, help="write report.tsv and PNG figures here")
    p.set_defaults(fn=cmd_fixtures)

    p = sub.add_parser("export-dot", help="Graphviz text for an automaton")
    p.add_argument("--automaton", required=True)
    p.add_argument("--omit-self-loops", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_export_dot)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (AutomatonFormatError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
