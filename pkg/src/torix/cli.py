"""Command-line interface.

Exit status is 0 on success, 1 on bad input and 2 when a runtime theorem
check fails. All ray indices are 0-based, as in fan files.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import cohomology as coh
from . import divisors as dv
from . import intersection as ix
from . import positivity as pos
from .blowup import run_surjectivity
from .errors import NotCartierError, TheoremViolation, TorixError
from .fan import is_complete, is_projective_space, is_simplicial, is_smooth, star_subdivision, validate_fan
from .io import emit_fan, fan_to_dict, parse_divisor, parse_indices, read_fan, run_corpus


def _q(x) -> str:
    return str(Fraction(x))


def _vec(v) -> str:
    return "(" + ", ".join(_q(x) for x in v) + ")"


def _yes(b) -> str:
    return "n/a" if b is None else ("yes" if b else "no")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _load(args):
    fan = read_fan(args.fan)
    D = parse_divisor(args.divisor, fan.nrays) if getattr(args, "divisor", None) is not None else None
    return fan, D


def _wall(w):
    return None if w is None else list(w.tau)


# -- commands -----------------------------------------------------------------

def cmd_classify(args):
    fan = read_fan(args.fan, validate=False)
    problems = validate_fan(fan)
    out = {"rank": fan.rank, "rays": fan.nrays, "max_cones": len(fan.max_cones), "valid": not problems,
           "diagnostics": problems}
    if not problems:
        out.update(simplicial=is_simplicial(fan), smooth=is_smooth(fan), complete=is_complete(fan),
                   projective_space=is_projective_space(fan))
    lines = [f"{k}: {_yes(v) if isinstance(v, bool) else v}" for k, v in out.items() if k != "diagnostics"]
    lines += [f"diagnostic: {p}" for p in problems]
    return out, lines, 1 if problems else 0


def cmd_clgroup(args):
    fan, D = _load(args)
    cg = dv.class_group(fan)
    out = {"group": str(cg), "free_rank": cg.free_rank, "torsion": list(cg.moduli),
           "prime_classes": [list(cg(dv.prime_divisor(fan, i)).free) + list(cg(dv.prime_divisor(fan, i)).torsion)
                             for i in range(fan.nrays)]}
    lines = [f"Cl = {cg}"] + [f"D_{i} -> {tuple(c)}" for i, c in enumerate(out["prime_classes"])]
    if D is not None:
        c = cg(D)
        out["class"] = list(c.free) + list(c.torsion)
        lines.append(f"[D] = {tuple(out['class'])}")
    return out, lines, 0


def cmd_cartier(args):
    fan, D = _load(args)
    try:
        cd = dv.cartier_data(fan, D)
    except NotCartierError as e:
        m = dv.q_cartier_index(fan, D)
        out = {"cartier": False, "witness": list(e.witness) if e.witness else None, "q_cartier_index": m}
        return out, [f"cartier: no (cone {out['witness']})", f"Q-Cartier index: {m if m else 'none'}"], 0
    out = {"cartier": True, "u": {str(list(c)): list(u) for c, u in cd.u.items()}}
    lines = ["cartier: yes"] + [f"{list(c)} u = {_vec(u)}" for c, u in cd.u.items()]
    return out, lines, 0


def cmd_intersect(args):
    fan, D = _load(args)
    degs = ix.wall_degrees(fan, D)
    out = {"walls": [{"tau": list(w.wall.tau), "degree": w.value} for w in degs]}
    return out, [f"{list(w.wall.tau)} {_q(w.value)}" for w in degs], 0


def cmd_positivity(args):
    fan, D = _load(args)
    p = pos.positivity_profile(fan, D)
    out = {"nef": p.nef, "globally_generated": p.globally_generated, "ample": p.ample, "very_ample": p.very_ample,
           "big": p.big, "min_degree": p.min_degree, "witness": _wall(p.witness)}
    lines = [f"{k.replace('_', ' ')}: {_yes(out[k])}"
             for k in ("nef", "globally_generated", "ample", "very_ample", "big")]
    lines += [f"min degree: {_q(p.min_degree)}", f"witness: {out['witness']}"]
    return out, lines, 0


def cmd_factorize(args):
    fan, D = _load(args)
    f = pos.nef_big_factorization(fan, D)
    out = {"fan": fan_to_dict(f.coarse), "divisor": str(f.divisor),
           "cone_map": {str(list(k)): list(v) for k, v in f.cone_map.items()}}
    lines = ["coarse fan: " + emit_fan(f.coarse).strip(), f"divisor: {f.divisor}"]
    lines += [f"{list(k)} -> {list(v)}" for k, v in f.cone_map.items()]
    return out, lines, 0


def cmd_cohomology(args):
    fan, D = _load(args)
    if args.omega is not None:
        from .omega import omega_table
        table = omega_table(fan, args.omega, D)
    else:
        table = coh.cohomology_table(fan, D, per_degree=args.per_degree)
    out = {"h": list(table.dims)}
    lines = [f"h^{i} = {h}" for i, h in enumerate(table.dims)]
    if args.per_degree and table.per_degree is not None:
        out["per_degree"] = {str(list(u)): list(d) for u, d in sorted(table.per_degree.items())}
        lines += [f"u = {_vec(u)}: " + " ".join(map(str, d)) for u, d in sorted(table.per_degree.items())]
    return out, lines, 0


def cmd_frobenius(args):
    fan = read_fan(args.fan)
    a, b = coh.frobenius_split_dims(fan, args.p)
    out = {"minus_one": a, "minus_p": b, "equal": a == b == 1}
    lines = [f"H^{fan.rank + 1}_B(S) at (-1,...,-1): {a}", f"H^{fan.rank + 1}_B(S) at (-{args.p},...,-{args.p}): {b}"]
    if a == b == 1:
        return out, lines, 0
    return out, lines + ["THEOREM VIOLATION: pieces differ from 1"], 2


def cmd_audit(args):
    fan = read_fan(args.fan)
    D = parse_divisor(args.D, fan.nrays)
    E = parse_divisor(args.E, fan.nrays)
    r = coh.vanishing_audit(fan, D, E, args.m)
    out = {"hypotheses": r.hypotheses, "h": list(r.table.dims),
           "h_shifted": list(r.shifted_table.dims) if r.shifted_table else None,
           "violations": r.violations, "verdict": r.verdict}
    lines = [f"{k}: {_yes(v)}" for k, v in r.hypotheses.items()]
    lines += [f"h^{i}(D) = {h}" for i, h in enumerate(r.table.dims)]
    if r.shifted_table:
        lines += [f"h^{i}(D + m(D+E)) = {h}" for i, h in enumerate(r.shifted_table.dims)]
    lines += [f"violation: {v}" for v in r.violations] + [f"verdict: {r.verdict}"]
    return out, lines, 2 if r.violations else 0


def cmd_fujita(args):
    fan, D = _load(args)
    primes = parse_indices(args.primes) if args.primes else tuple(range(fan.nrays))
    check = pos.fujita_very_ample if args.very_ample else pos.fujita_global_generation
    v = check(fan, D, primes)
    detail = {k: (_wall(x) if k == "wall" else str(x) if isinstance(x, dv.Divisor) else x)
              for k, x in v.detail.items()}
    out = {"outcome": v.outcome.value, "detail": detail}
    return out, [f"outcome: {v.outcome.value}"] + [f"{k}: {x}" for k, x in detail.items()], 0


def cmd_blowup(args):
    fan = read_fan(args.fan)
    new, idx = star_subdivision(fan, parse_indices(args.cone))
    text = emit_fan(new)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    out = {"fan": fan_to_dict(new), "new_ray": idx}
    return out, [text.strip(), f"new ray: {idx}"], 0


def cmd_surjectivity(args):
    fan, D = _load(args)
    targets = [parse_indices(t) for t in args.targets.split(";") if t.strip()]
    r = run_surjectivity(fan, D, targets)
    out = {"exceptional": r.exceptional, "divisor": str(r.divisor), "h": list(r.table.dims), "h0_L": r.h0_L,
           "face_counts": r.face_counts, "surjective": r.surjective, "violations": r.violations}
    lines = [f"blow-up rays: {r.blown_up.nrays}, exceptional: {r.exceptional}", f"pi^*L - E = {r.divisor}"]
    lines += [f"h^{i}(pi^*L - E) = {h}" for i, h in enumerate(r.table.dims)]
    lines += [f"h^0(L) = {r.h0_L}, restrictions: {r.face_counts}", f"surjective: {_yes(r.surjective)}"]
    lines += [f"THEOREM VIOLATION: {v}" for v in r.violations]
    return out, lines, 2 if r.violations else 0


def cmd_corpus(args):
    m = run_corpus(args.seed, args.count, args.dim, args.steps, args.out)
    return m, [f"{e['file']}: {e['base']}, {len(e['blowups'])} blow-ups, {e['rays']} rays" for e in m["fans"]], 0


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1,0,2" and "-1/2,0" through as positional divisors
        self._negative_number_matcher = re.compile(r"^-\d[\d,/-]*$")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torix", description="Exact computations on toric varieties.")
    p.add_argument("--json", action="store_true", help="print machine-readable JSON")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, divisor=True, help=None):
        s = sub.add_parser(name, help=help)
        s.add_argument("fan", help="fan file (JSON)")
        if divisor:
            s.add_argument("divisor", help="coefficients a1,...,ad (integers or p/q)")
        s.set_defaults(func=func)
        return s

    add("classify", cmd_classify, divisor=False, help="validity, smoothness, completeness")
    s = add("clgroup", cmd_clgroup, divisor=False, help="class group and divisor classes")
    s.add_argument("divisor", nargs="?")
    add("cartier", cmd_cartier, help="local characters or a failing cone")
    add("intersect", cmd_intersect, help="degree on every invariant curve")
    add("positivity", cmd_positivity, help="nef / ample / gg / big profile")
    add("factorize", cmd_factorize, help="descend a nef and big divisor to an ample one")
    s = add("cohomology", cmd_cohomology, help="h^i(O(D)) or h^i(Omega^j(D))")
    s.add_argument("--per-degree", action="store_true")
    s.add_argument("--omega", type=int, metavar="J")
    s = add("frobenius", cmd_frobenius, divisor=False, help="Frobenius splitting dimension check")
    s.add_argument("-p", type=int, required=True)
    s = add("audit", cmd_audit, divisor=False, help="fractional vanishing audit")
    s.add_argument("D")
    s.add_argument("E")
    s.add_argument("m", type=int)
    s = add("fujita", cmd_fujita, help="Fujita-type global generation / very ampleness")
    s.add_argument("--primes", help="0-based ray indices, e.g. 0,1,2 (default: all)")
    s.add_argument("--very-ample", action="store_true")
    s = add("blowup", cmd_blowup, divisor=False, help="star subdivision along a cone")
    s.add_argument("cone", help="0-based ray indices, e.g. 0,1")
    s.add_argument("-o", "--output")
    s = add("surjectivity", cmd_surjectivity, help="restriction surjectivity via the blow-up")
    s.add_argument("--targets", required=True, help="cones separated by ';', e.g. '0,2;1,3'")
    s = sub.add_parser("corpus", help="write a deterministic corpus of smooth complete fans")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--steps", type=int, default=0)
    s.add_argument("--out", default="corpus")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, lines, code = args.func(args)
    except TheoremViolation as e:
        print(f"THEOREM VIOLATION: {e}", file=sys.stderr)
        return 2
    except (TorixError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(_jsonable(out), sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
