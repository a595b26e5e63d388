"""Line-oriented instance files.

::

    # comment
    [instance]
    model = finite
    universe_size = 3
    generators = {0}; {1,2}
    name = worked

    [rule]
    kind = additive
    weights = (1); (0); (0)

    [density]
    f = [2, 1, 0]

    [options]
    eps_grid = 1, 1/2, 1/4
    tol = 1e-6

Sections: ``instance``, ``rule``, ``table`` (``set = value`` lines),
``density``, ``target`` and ``options``.  Unknown sections or keys and
repeated keys are errors carrying the line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from dobrakov.distortion import Distortion
from dobrakov.dyadic import MAX_DEPTH, IntervalRule, TargetSet
from dobrakov.errors import DobrakovError, SpecError
from dobrakov.lattice import LatticeValue, format_value, parse_value
from dobrakov.setring import FiniteSet, Ring, generate_ring
from dobrakov.submeasure import Additive, Distorted, Submeasure, Table

SECTIONS = ("instance", "rule", "table", "density", "target", "options")
KEYS = {
    "instance": {"model", "universe_size", "generators", "name"},
    "rule": {"kind", "weights", "base_weights", "distortion", "direction", "distortions"},
    "density": {"f"},
    "target": {"set"},
    "options": {"eps_grid", "tol", "max_depth", "seed"},
}
FINITE_KINDS = ("additive", "distorted", "table")


@dataclass
class InstanceSpec:
    model: str
    name: str = "instance"
    universe_size: int | None = None
    generators: tuple[FiniteSet, ...] | None = None  # None means the power set
    kind: str | None = None
    weights: tuple[LatticeValue, ...] | None = None
    base_weights: tuple[Fraction, ...] | None = None
    distortion: Distortion | None = None
    direction: LatticeValue | None = None
    table: dict[FiniteSet, LatticeValue] | None = None
    density: tuple[Fraction, ...] | None = None
    distortions: tuple[Distortion, ...] | None = None
    target: TargetSet | None = None
    eps_grid: tuple[Fraction, ...] | None = None
    tol: float | None = None
    max_depth: int | None = None
    seed: int | None = None
    lines: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    # -- building --------------------------------------------------------

    def ring(self) -> Ring:
        if self.model != "finite":
            raise DobrakovError("model mismatch: ring needs a finite model")
        if self.generators is None:
            return Ring.power_set(self.universe_size)
        return generate_ring(self.universe_size, self.generators)

    def submeasure(self) -> Submeasure:
        ring = self.ring()
        try:
            if self.kind == "additive":
                rule = Additive(self.weights)
            elif self.kind == "distorted":
                direction = self.direction or LatticeValue.vec(1)
                rule = Distorted(self.base_weights, self.distortion, direction)
            else:
                rule = Table(self.table)
            return Submeasure(ring, rule, self.name)
        except DobrakovError as exc:
            raise SpecError(str(exc), self.lines.get("rule")) from exc

    def interval_rule(self) -> IntervalRule:
        if self.model != "dyadic":
            raise DobrakovError("model mismatch: interval rule needs a dyadic model")
        return IntervalRule(self.distortions)


def _sets(n: int, text: str) -> tuple[FiniteSet, ...]:
    return tuple(FiniteSet.parse(n, p) for p in text.split(";") if p.strip())


def _fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(p.strip()) for p in text.split(",") if p.strip())


def _density(text: str) -> tuple[Fraction, ...]:
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("density must be written as [v0, v1, ...]")
    return _fractions(text[1:-1])


def _values(text: str) -> tuple[LatticeValue, ...]:
    return tuple(parse_value(p.strip()) for p in text.split(";") if p.strip())


def parse_spec(text: str) -> InstanceSpec:
    raw: dict[str, dict[str, tuple[str, int]]] = {}
    table_rows: list[tuple[str, str, int]] = []
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise SpecError(f"unknown section [{section}]", lineno)
            if section in raw:
                raise SpecError(f"repeated section [{section}]", lineno)
            raw[section] = {}
            continue
        if section is None:
            raise SpecError("key outside any section", lineno)
        if "=" not in line:
            raise SpecError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if section == "table":
            table_rows.append((key, value, lineno))
            continue
        if key not in KEYS[section]:
            raise SpecError(f"unknown key {key!r} in [{section}]", lineno)
        if key in raw[section]:
            raise SpecError(f"repeated key {key!r}", lineno)
        raw[section][key] = (value, lineno)

    def get(sec: str, key: str, default=None):
        return raw.get(sec, {}).get(key, (default, None))

    def where(sec: str, key: str) -> int | None:
        return raw.get(sec, {}).get(key, (None, None))[1]

    model, ml = get("instance", "model")
    if model not in ("finite", "dyadic"):
        raise SpecError(f"model must be finite or dyadic, got {model!r}", ml)
    name = get("instance", "name")[0] or "instance"
    spec = InstanceSpec(model=model, name=name)
    spec.lines = {"rule": where("rule", "kind")}

    def convert(sec, key, fn):
        value, ln = get(sec, key)
        if value is None:
            return None
        try:
            return fn(value)
        except (DobrakovError, ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"bad {key}: {exc}", ln) from exc

    spec.eps_grid = convert("options", "eps_grid", _fractions)
    spec.tol = convert("options", "tol", float)
    spec.max_depth = convert("options", "max_depth", int)
    spec.seed = convert("options", "seed", int)
    if spec.max_depth is not None and not 1 <= spec.max_depth <= MAX_DEPTH:
        raise SpecError("depth cap", where("options", "max_depth"))

    if model == "dyadic":
        for sec, key in (("instance", "universe_size"), ("instance", "generators"), ("rule", "kind"),
                         ("rule", "weights"), ("rule", "base_weights"), ("rule", "distortion"),
                         ("rule", "direction"), ("density", "f")):
            if get(sec, key)[0] is not None:
                raise SpecError(f"{key!r} does not apply to the dyadic model", where(sec, key))
        if table_rows:
            raise SpecError("[table] does not apply to the dyadic model", table_rows[0][2])
        spec.distortions = convert("rule", "distortions",
                                   lambda v: tuple(Distortion.parse(p.strip()) for p in v.split(",")))
        if not spec.distortions:
            raise SpecError("dyadic rule needs distortions", where("rule", "distortions"))
        spec.target = convert("target", "set", TargetSet.parse)
        return spec

    if get("rule", "distortions")[0] is not None or get("target", "set")[0] is not None:
        raise SpecError("distortions/target apply only to the dyadic model",
                        where("rule", "distortions") or where("target", "set"))
    spec.universe_size = convert("instance", "universe_size", int)
    if spec.universe_size is None:
        raise SpecError("finite model needs universe_size", ml)
    n = spec.universe_size
    gens, gl = get("instance", "generators")
    if gens is not None and gens.strip() != "power":
        spec.generators = convert("instance", "generators", lambda v: _sets(n, v))
    kind, kl = get("rule", "kind")
    if kind not in FINITE_KINDS:
        raise SpecError(f"rule kind must be one of {', '.join(FINITE_KINDS)}", kl)
    spec.kind = kind
    expected = {"additive": {"weights"}, "distorted": {"base_weights", "distortion", "direction"},
                "table": set()}[kind]
    for key, (_, ln) in raw.get("rule", {}).items():
        if key != "kind" and key not in expected:
            raise SpecError(f"key {key!r} does not apply to rule kind {kind}", ln)
    if kind == "additive":
        spec.weights = convert("rule", "weights", _values)
        if spec.weights is None:
            raise SpecError("additive rule needs weights", kl)
    elif kind == "distorted":
        spec.base_weights = convert("rule", "base_weights", _fractions)
        spec.distortion = convert("rule", "distortion", Distortion.parse)
        spec.direction = convert("rule", "direction", parse_value)
        if spec.base_weights is None or spec.distortion is None:
            raise SpecError("distorted rule needs base_weights and distortion", kl)
    else:
        if "table" not in raw:
            raise SpecError("table rule needs a [table] section", kl)
        spec.table = {}
        for key, value, ln in table_rows:
            try:
                s, v = FiniteSet.parse(n, key), parse_value(value)
            except (DobrakovError, ValueError) as exc:
                raise SpecError(f"bad table row: {exc}", ln) from exc
            if s in spec.table:
                raise SpecError(f"repeated table row {s}", ln)
            spec.table[s] = v
    if kind != "table" and table_rows:
        raise SpecError("[table] needs rule kind table", table_rows[0][2])
    spec.density = convert("density", "f", _density)
    if spec.density is not None and len(spec.density) != n:
        raise SpecError(f"density needs {n} values", where("density", "f"))
    if spec.density is not None and any(v < 0 for v in spec.density):
        raise SpecError("density must be nonnegative", where("density", "f"))
    return spec


def load_spec(path: str | Path) -> InstanceSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"))


def _join_fr(xs) -> str:
    return ", ".join(str(x) for x in xs)


def serialize_spec(spec: InstanceSpec) -> str:
    out = ["[instance]", f"model = {spec.model}", f"name = {spec.name}"]
    if spec.model == "finite":
        out.append(f"universe_size = {spec.universe_size}")
        gens = "power" if spec.generators is None else "; ".join(str(g) for g in spec.generators)
        out.append(f"generators = {gens}")
        out += ["", "[rule]", f"kind = {spec.kind}"]
        if spec.kind == "additive":
            out.append("weights = " + "; ".join(format_value(w) for w in spec.weights))
        elif spec.kind == "distorted":
            out.append("base_weights = " + _join_fr(spec.base_weights))
            out.append(f"distortion = {spec.distortion}")
            if spec.direction is not None:
                out.append(f"direction = {format_value(spec.direction)}")
        else:
            out += ["", "[table]"]
            out += [f"{s} = {format_value(v)}" for s, v in sorted(spec.table.items())]
        if spec.density is not None:
            out += ["", "[density]", "f = [" + _join_fr(spec.density) + "]"]
    else:
        out += ["", "[rule]", "distortions = " + ", ".join(str(g) for g in spec.distortions)]
        if spec.target is not None:
            out += ["", "[target]", f"set = {spec.target}"]
    opts = []
    if spec.eps_grid is not None:
        opts.append("eps_grid = " + _join_fr(spec.eps_grid))
    for key in ("tol", "max_depth", "seed"):
        value = getattr(spec, key)
        if value is not None:
            opts.append(f"{key} = {value!r}")
    if opts:
        out += ["", "[options]"] + opts
    return "\n".join(out) + "\n"
