"""Reading and writing fans and divisors, and the generated fan corpus."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

from . import corpus
from .divisors import Divisor
from .errors import FanError, TorixError
from .fan import Fan, star_subdivision, validate_fan


class FormatError(TorixError):
    pass


def fan_to_dict(fan: Fan) -> dict:
    return {
        "rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in sorted(fan.max_cones)],
    }


def emit_fan(fan: Fan) -> str:
    """Canonical one-line JSON text, newline terminated."""
    return json.dumps(fan_to_dict(fan)) + "\n"


def _where(text: str, needle: str) -> str:
    idx = text.find(needle)
    if idx < 0:
        return ""
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return f"line {line}, column {col}: "


def parse_fan(text: str, source: str = "<fan>", validate: bool = True) -> Fan:
    """Parse the JSON fan format.

    Errors name the source with a line and column for syntax problems,
    and the offending ray or cone for semantic ones.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{source}: expected a JSON object")
    missing = [k for k in ("rank", "rays", "max_cones") if k not in data]
    if missing:
        raise FormatError(f"{source}: missing key {missing[0]!r}")
    extra = sorted(set(data) - {"rank", "rays", "max_cones"})
    if extra:
        raise FormatError(f"{source}: {_where(text, json.dumps(extra[0]))}unknown key {extra[0]!r}")
    rank, rays, cones = data["rank"], data["rays"], data["max_cones"]
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise FormatError(f"{source}: rank must be an integer")
    for name, rows in (("rays", rays), ("max_cones", cones)):
        if not isinstance(rows, list):
            raise FormatError(f"{source}: {name} must be a list")
        for k, row in enumerate(rows):
            if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
                raise FormatError(f"{source}: {name}[{k}] must be a list of integers")
    try:
        fan = Fan(rank, rays, cones)
    except FanError as e:
        raise FormatError(f"{source}: {e}") from None
    if validate:
        problems = validate_fan(fan)
        if problems:
            raise FormatError(f"{source}: " + "; ".join(problems))
    return fan


def read_fan(path, validate: bool = True) -> Fan:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror}") from None
    return parse_fan(text, str(path), validate)


def write_fan(fan: Fan, path) -> None:
    Path(path).write_text(emit_fan(fan), encoding="utf-8")


def parse_rational(token: str) -> int | Fraction:
    token = token.strip()
    if "/" in token:
        num, den = token.split("/", 1)
        value = Fraction(int(num), int(den))
        return value.numerator if value.denominator == 1 else value
    return int(token)


def parse_divisor(text: str, nrays: int | None = None) -> Divisor:
    """Parse ``"a1,a2,...,ad"`` with integer or ``p/q`` entries."""
    out, col = [], 1
    for token in text.split(","):
        try:
            out.append(parse_rational(token))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"divisor, column {col}: invalid coefficient {token.strip()!r}") from None
        col += len(token) + 1
    if nrays is not None and len(out) != nrays:
        raise FormatError(f"divisor has {len(out)} coefficients, the fan has {nrays} rays")
    return Divisor(out)


def parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise FormatError(f"invalid index list {text!r}") from None


# -- corpus -------------------------------------------------------------------

def _families(dim: int):
    P = corpus.projective_space
    P1 = P(1)
    if dim == 1:
        return [("P1", P1)]
    if dim == 2:
        fams = [("P2", P(2)), ("P1xP1", corpus.product(P1, P1))]
        fams += [(f"F{a}", corpus.hirzebruch(a)) for a in range(1, 4)]
        return fams
    if dim == 3:
        fams = [("P3", P(3)), ("P1xP2", corpus.product(P1, P(2))),
                ("P1xP1xP1", corpus.product(P1, corpus.product(P1, P1)))]
        fams += [(f"P1xF{a}", corpus.product(P1, corpus.hirzebruch(a))) for a in range(1, 3)]
        return fams
    if dim == 4:
        return [("P4", P(4)), ("P2xP2", corpus.product(P(2), P(2))), ("P1xP3", corpus.product(P1, P(3))),
                ("P1xP1xP2", corpus.product(corpus.product(P1, P1), P(2)))]
    raise FormatError("corpus dimension must be 1, 2, 3 or 4")


def corpus_fans(seed: int, count: int, dim: int, steps: int) -> list[tuple[dict, Fan]]:
    """Deterministic list of ``(provenance, fan)``; the first base is always P^dim."""
    fams = _families(dim)
    if dim == 1 and steps:
        raise FormatError("curves admit no blow-ups; use steps 0 in dimension 1")
    rng = random.Random(seed)
    out = []
    for k in range(count):
        name, fan = fams[0] if k == 0 else fams[rng.randrange(len(fams))]
        blowups = []
        for _ in range(steps):
            choices = [c for c in fan.all_cones if len(c) >= 2]
            c = choices[rng.randrange(len(choices))]
            fan, _ = star_subdivision(fan, c)
            blowups.append(list(c))
        out.append(({"base": name, "blowups": blowups}, fan))
    return out


def run_corpus(seed: int, count: int, dim: int, steps: int, outdir) -> dict:
    """Write ``fan_XXX.json`` files and ``manifest.json`` into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for k, (prov, fan) in enumerate(corpus_fans(seed, count, dim, steps)):
        name = f"fan_{k:03d}.json"
        write_fan(fan, outdir / name)
        entries.append({"file": name, **prov, "rays": fan.nrays})
    manifest = {"seed": seed, "count": count, "dim": dim, "steps": steps, "fans": entries}
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    return manifest
