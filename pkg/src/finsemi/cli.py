"""Command line front end: JSON structure files in, deterministic JSON reports out.

File schema: ``{kind, size, add, mul?, one?, left_action?, right_action?,
base?, maps?}``. Element indices are 0-based with zero at 0 and one at 1.
A bare string such as ``"zmod(2)"`` may stand in for any semiring.

Exit codes: 0 all laws passed, 1 a law failed, 2 bad input, 3 size cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .congruence import cancellation_witness, cancellative_reflection, is_cancellative
from .core import (
    FiniteCommutativeMonoid,
    FiniteSemimodule,
    FiniteSemiring,
    LawReport,
    StructureMap,
    builtin_structure,
    regular_module,
    validate_map,
    validate_structure,
)
from .errors import FinsemiError, ParseError, SemanticError
from .jstructures import (
    check_jcomonad,
    check_jmonad,
    semicomonoid_to_jcomonad,
    semicoring_roundtrip,
    semimonoid_to_jmonad,
    semiring_roundtrip,
    structure_universe,
    UNIVERSE_LEVELS,
)
from .semistructures import (
    SemicounitalSemicoring,
    SemiunitalSemiring,
    check_semicounital_semicoring,
    check_semiunital_semiring,
    convolution_monoid,
    enumerate_structures,
    search_space,
    sweedler_semicoring,
    unit_semicoring,
    unit_semiring,
)
from .tensor import DEFAULT_CAP, tensor_product
from .variety import ambient_of, coherence_check, default_universe

COMMANDS = ("validate", "reflect", "tensor", "check", "convolve", "sweedler", "enumerate", "roundtrip")
SUITES = ("structure", "cancellative", "semiring", "semicoring", "jmonad", "jcomonad", "coherence")
MAP_KINDS = ("monoid-map", "semiring-map", "linear-map")


# ---------------------------------------------------------------------------
# Parsing

def _locate(text: str, key: str | None) -> tuple[int, int]:
    """Line and column of the first ``"key"`` in ``text``; (1, 1) if absent."""
    if key is None or not text:
        return 1, 1
    match = re.search(re.escape(json.dumps(key)) + r"\s*:", text)
    if match is None:
        return 1, 1
    line = text.count("\n", 0, match.start()) + 1
    column = match.start() - (text.rfind("\n", 0, match.start()) + 1) + 1
    return line, column


class _Reader:
    def __init__(self, text: str):
        self.text = text

    def fail(self, key: str | None, message: str) -> ParseError:
        return ParseError(message, *_locate(self.text, key))

    def field(self, obj: dict, key: str, required: bool = True):
        if key not in obj:
            if required:
                raise self.fail(None, f"missing field {key!r}")
            return None
        return obj[key]

    def index(self, value, bound: int, key: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(key, f"{key} entries must be integers")
        if not 0 <= value < bound:
            raise self.fail(key, f"{key} entry {value} is out of range 0..{bound - 1}")
        return value

    def vector(self, value, length: int, bound: int, key: str) -> tuple[int, ...]:
        if not isinstance(value, list) or len(value) != length:
            raise self.fail(key, f"{key} must be a list of length {length}")
        return tuple(self.index(v, bound, key) for v in value)

    def table(self, value, rows: int, cols: int, bound: int, key: str) -> tuple[tuple[int, ...], ...]:
        if not isinstance(value, list) or len(value) != rows:
            raise self.fail(key, f"{key} must have {rows} rows")
        return tuple(self.vector(row, cols, bound, key) for row in value)

    # -- structures ---------------------------------------------------------

    def semiring(self, obj, key: str = "base") -> FiniteSemiring:
        if isinstance(obj, str):
            return builtin_structure(obj)
        value = self.build(obj)
        if not isinstance(value, FiniteSemiring):
            raise self.fail(key, f"{key} must describe a semiring")
        return value

    def monoid(self, obj: dict) -> FiniteCommutativeMonoid:
        size = self.field(obj, "size")
        if isinstance(size, bool) or not isinstance(size, int) or size < 1:
            raise self.fail("size", "size must be a positive integer")
        return FiniteCommutativeMonoid(self.table(self.field(obj, "add"), size, size, size, "add"), 0)

    def bases(self, obj: dict) -> tuple[FiniteSemiring | None, FiniteSemiring | None]:
        base = self.field(obj, "base", required=False)
        if isinstance(base, dict) and "kind" not in base:
            left = base.get("left")
            right = base.get("right")
            return (None if left is None else self.semiring(left),
                    None if right is None else self.semiring(right))
        if base is None:
            return None, None
        s = self.semiring(base)
        return s, s

    def semimodule(self, obj: dict) -> FiniteSemimodule:
        carrier = self.monoid(obj)
        n = carrier.size
        base_left, base_right = self.bases(obj)
        left = right = None
        if "left_action" in obj:
            if base_left is None:
                raise self.fail("left_action", "left_action needs a left base")
            left = self.table(obj["left_action"], base_left.size, n, n, "left_action")
        else:
            base_left = None
        if "right_action" in obj:
            if base_right is None:
                raise self.fail("right_action", "right_action needs a right base")
            right = self.table(obj["right_action"], n, base_right.size, n, "right_action")
        else:
            base_right = None
        return FiniteSemimodule(carrier, left, right, base_left, base_right, name=obj.get("name", ""))

    def structure_map(self, obj: dict) -> StructureMap:
        source = self.build(self.field(obj, "source"))
        target = self.build(self.field(obj, "target"))
        table = self.vector(self.field(obj, "table"), source.size, target.size, "table")
        return StructureMap(obj["kind"], source, target, table)

    def maps(self, obj: dict) -> dict:
        maps = self.field(obj, "maps")
        if not isinstance(maps, dict):
            raise self.fail("maps", "maps must be an object")
        return maps

    def build(self, obj: Any):
        if isinstance(obj, str):
            return builtin_structure(obj)
        if not isinstance(obj, dict):
            raise self.fail(None, "a structure must be a JSON object or a fixture name")
        kind = self.field(obj, "kind")
        if kind == "fixture":
            return builtin_structure(self.field(obj, "name"))
        if kind == "monoid":
            return self.monoid(obj)
        if kind == "semiring":
            additive = self.monoid(obj)
            n = additive.size
            mul = self.table(self.field(obj, "mul"), n, n, n, "mul")
            one = self.index(obj.get("one", 1 if n > 1 else 0), n, "one")
            return FiniteSemiring(additive, mul, one, obj.get("name", ""))
        if kind == "semimodule":
            return self.semimodule(obj)
        if kind in MAP_KINDS:
            return self.structure_map(obj)
        if kind == "semiunital-semiring":
            carrier = self.semimodule(obj)
            a = ambient_of(carrier)
            maps = self.maps(obj)
            pairs = self.table(self.field(maps, "mu"), carrier.size, carrier.size, carrier.size, "mu")
            eta = self.vector(self.field(maps, "eta"), a.size, carrier.size, "eta")
            return SemiunitalSemiring.from_pairs(a, carrier, pairs, eta)
        if kind == "semicounital-semicoring":
            carrier = self.semimodule(obj)
            a = ambient_of(carrier)
            maps = self.maps(obj)
            sq = tensor_product(carrier, carrier)
            delta = self.vector(self.field(maps, "delta"), carrier.size, sq.size, "delta")
            epsilon = self.vector(self.field(maps, "epsilon"), carrier.size, a.size, "epsilon")
            return SemicounitalSemicoring(a, carrier, StructureMap("linear-map", carrier, sq.carrier, delta),
                                          StructureMap("linear-map", carrier, regular_module(a), epsilon))
        raise self.fail("kind", f"unknown kind {kind!r}")


def _semantic_check(value) -> None:
    if isinstance(value, (FiniteCommutativeMonoid, FiniteSemiring, FiniteSemimodule)):
        report = validate_structure(value)
        if isinstance(value, FiniteSemimodule):
            for base in (value.base_left, value.base_right):
                if base is not None and report:
                    report = validate_structure(base)
    elif isinstance(value, StructureMap):
        report = validate_map(value)
    elif isinstance(value, (SemiunitalSemiring, SemicounitalSemicoring)):
        report = validate_structure(value.carrier)
        for name in ("mu", "eta") if isinstance(value, SemiunitalSemiring) else ("Delta", "epsilon"):
            if report:
                report = validate_map(getattr(value, name)).prefixed(f"{name}-")
    else:
        return
    if not report:
        raise SemanticError(f"{report.law_id}: {report.detail}", witness=report.witness)


def parse_text(text: str):
    """Parse a structure description held in a string."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    value = _Reader(text).build(obj)
    _semantic_check(value)
    return value


def parse_structure(path: str | Path):
    """Read and validate one structure file."""
    return parse_text(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Dumping

def _rows(table) -> list[list[int]]:
    return [list(row) for row in table]


def _dump_module_fields(m: FiniteSemimodule, kind: str) -> dict:
    out: dict[str, Any] = {"kind": kind, "size": m.size, "add": _rows(m.add)}
    if m.name:
        out["name"] = m.name
    if m.left_action is not None:
        out["left_action"] = _rows(m.left_action)
    if m.right_action is not None:
        out["right_action"] = _rows(m.right_action)
    if m.base_left is not None and m.base_left == m.base_right:
        out["base"] = dump(m.base_left)
    elif m.base_left is not None or m.base_right is not None:
        out["base"] = {side: dump(b) for side, b in (("left", m.base_left), ("right", m.base_right))
                       if b is not None}
    return out


def dump(x) -> dict:
    """The JSON-ready description that ``parse_text`` reads back to an equal value."""
    if isinstance(x, FiniteSemiring):
        out = {"kind": "semiring", "size": x.size, "add": _rows(x.add), "mul": _rows(x.mul), "one": x.one}
        if x.name:
            out["name"] = x.name
        return out
    if isinstance(x, FiniteCommutativeMonoid):
        return {"kind": "monoid", "size": x.size, "add": _rows(x.add)}
    if isinstance(x, FiniteSemimodule):
        if x.zero != 0:
            raise SemanticError("dumps need zero at index 0")
        return _dump_module_fields(x, "semimodule")
    if isinstance(x, StructureMap):
        return {"kind": x.kind, "source": dump(x.source), "target": dump(x.target), "table": list(x.table)}
    if isinstance(x, SemiunitalSemiring):
        out = _dump_module_fields(x.carrier, "semiunital-semiring")
        n = x.carrier.size
        out["maps"] = {"mu": [[x.product(a, b) for b in range(n)] for a in range(n)], "eta": list(x.eta.table)}
        return out
    if isinstance(x, SemicounitalSemicoring):
        out = _dump_module_fields(x.carrier, "semicounital-semicoring")
        out["maps"] = {"delta": list(x.Delta.table), "epsilon": list(x.epsilon.table)}
        return out
    raise SemanticError(f"cannot dump a {type(x).__name__}")


def dumps(x) -> str:
    return json.dumps(dump(x), sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Execution

@dataclass
class CommandRequest:
    command: str
    inputs: list[str]
    cap: int = DEFAULT_CAP
    strict: bool = False
    suite: str | None = None
    side: str = "both"
    out: str | None = None
    universe: str = "full"


@dataclass
class RunReport:
    command: str
    inputs: list[str]
    laws: dict[str, LawReport] = field(default_factory=dict)
    result: dict[str, Any] = field(default_factory=dict)
    error: FinsemiError | None = None

    @property
    def status(self) -> int:
        if self.error is not None:
            return self.error.exit_status
        return 0 if all(r.passed for r in self.laws.values()) else 1

    def to_dict(self) -> dict:
        error = None
        if self.error is not None:
            error = {"code": self.error.code, "message": str(self.error), "witness": list(self.error.witness)}
            if isinstance(self.error, ParseError):
                error.update(line=self.error.line, column=self.error.column)
        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "laws": {k: v.to_dict() for k, v in self.laws.items()},
            "result": self.result,
            "error": error,
            "status": self.status,
        }

    def render_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        lines = [f"{self.command} {' '.join(self.inputs)}".rstrip()]
        for name in sorted(self.laws):
            r = self.laws[name]
            mark = "PASS" if r.passed else f"FAIL {r.law_id} witness={list(r.witness)}"
            lines.append(f"  {name}: {mark}")
        if self.error is not None:
            lines.append(f"  error {self.error.code}: {self.error}")
        lines.append(f"status {self.status}")
        return "\n".join(lines) + "\n"


class MissingFile(FinsemiError):
    code = "missing-file"
    exit_status = 2


def _load(path: str):
    try:
        return parse_structure(path)
    except OSError as exc:
        raise MissingFile(f"cannot read {path}: {exc.strerror}") from exc


def _as_module(x) -> FiniteSemimodule:
    if isinstance(x, FiniteSemiring):
        return regular_module(x)
    if isinstance(x, FiniteCommutativeMonoid):
        return FiniteSemimodule(x)
    if isinstance(x, FiniteSemimodule):
        return x
    if isinstance(x, (SemiunitalSemiring, SemicounitalSemicoring)):
        return x.carrier
    raise SemanticError(f"expected a module-like structure, got {type(x).__name__}")


def _as_ring(x) -> SemiunitalSemiring:
    if isinstance(x, SemiunitalSemiring):
        return x
    if isinstance(x, FiniteSemiring):
        return unit_semiring(x)
    raise SemanticError(f"expected a semiring structure, got {type(x).__name__}")


def _as_coring(x) -> SemicounitalSemicoring:
    if isinstance(x, SemicounitalSemicoring):
        return x
    if isinstance(x, FiniteSemiring):
        return unit_semicoring(x)
    raise SemanticError(f"expected a semicoring structure, got {type(x).__name__}")


def _need(req: CommandRequest, count: int, optional: int = 0) -> list:
    if not count <= len(req.inputs) <= count + optional:
        raise SemanticError(f"{req.command} takes {count}{'+' if optional else ''} input file(s)")
    return [_load(p) for p in req.inputs]


def _sides(req: CommandRequest) -> tuple[str, ...]:
    return ("right", "left") if req.side == "both" else (req.side,)


def _cmd_validate(req, report):
    for k, value in enumerate(_need(req, 1, 1000)):
        report.laws[f"input-{k}"] = LawReport.ok()
        report.result[f"input-{k}"] = {"kind": type(value).__name__, "dump": dump(value)}


def _cmd_reflect(req, report):
    (x,) = _need(req, 1)
    r = cancellative_reflection(_as_module(x))
    report.laws["reflected-cancellative"] = (
        LawReport.ok() if is_cancellative(r.reflected)
        else LawReport.fail("cancellative", cancellation_witness(r.reflected)))
    report.result.update(reflected=dump(r.reflected), projection=list(r.projection.table),
                         kernel=list(r.kernel), size=r.reflected.size)


def _cmd_tensor(req, report):
    m, n = (_as_module(v) for v in _need(req, 2))
    t = tensor_product(m, n, req.cap)
    report.laws["cancellative"] = (
        LawReport.ok() if is_cancellative(t.carrier)
        else LawReport.fail("cancellative", cancellation_witness(t.carrier)))
    report.result.update(carrier=dump(t.carrier), tau=_rows(t.tau_table), size=t.size)


def _cmd_check(req, report):
    (x,) = _need(req, 1)
    suite = req.suite or "structure"
    if suite == "structure":
        report.laws["structure"] = LawReport.ok()
    elif suite == "cancellative":
        m = _as_module(x)
        w = cancellation_witness(m)
        report.laws["cancellative"] = LawReport.ok() if w is None else LawReport.fail("cancellative", w)
    elif suite == "semiring":
        report.laws["semiring"] = check_semiunital_semiring(_as_ring(x), req.strict)
    elif suite == "semicoring":
        report.laws["semicoring"] = check_semicounital_semicoring(_as_coring(x), req.strict)
    elif suite == "jmonad":
        s = _as_ring(x)
        universe = structure_universe(s.carrier, (s.mu, s.eta), level=req.universe)
        for side in _sides(req):
            report.laws[f"jmonad-{side}"] = check_jmonad(semimonoid_to_jmonad(s, side, cap=req.cap), universe)
    elif suite == "jcomonad":
        c = _as_coring(x)
        universe = structure_universe(c.carrier, (c.Delta, c.epsilon), level=req.universe)
        for side in _sides(req):
            report.laws[f"jcomonad-{side}"] = check_jcomonad(semicomonoid_to_jcomonad(c, side, cap=req.cap), universe)
    elif suite == "coherence":
        a = x if isinstance(x, FiniteSemiring) else ambient_of(_as_module(x))
        report.laws["coherence"] = coherence_check(default_universe(a), a, cap=req.cap)
    else:
        raise SemanticError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report.result["suite"] = suite
    if suite in ("jmonad", "jcomonad"):
        report.result["universe"] = req.universe


def _cmd_convolve(req, report):
    coring_value, ring_value = _need(req, 2)
    conv = convolution_monoid(_as_coring(coring_value), _as_ring(ring_value), req.cap)
    report.laws["monoid"] = conv.report
    report.result.update(size=conv.size, elements=_rows(conv.carrier), table=_rows(conv.table), unit=conv.unit)


def _cmd_sweedler(req, report):
    (kappa,) = _need(req, 1)
    if not isinstance(kappa, StructureMap):
        raise SemanticError("sweedler needs a semiring-map file")
    c = sweedler_semicoring(kappa, req.cap)
    report.laws["semicoring"] = check_semicounital_semicoring(c, req.strict)
    report.result.update(semicoring=dump(c), size=c.carrier.size)


def _cmd_enumerate(req, report):
    values = _need(req, 1, 1)
    a = values[0]
    if not isinstance(a, FiniteSemiring):
        raise SemanticError("enumerate needs a base semiring first")
    carrier = _as_module(values[1]) if len(values) > 1 else regular_module(a)
    kind = req.suite or "semiring"
    if kind not in ("semiring", "semicoring"):
        raise SemanticError("enumerate suite must be semiring or semicoring")
    found = enumerate_structures(a, carrier, kind, req.cap)
    space = search_space(a, carrier, kind, req.cap)
    report.laws["enumerate"] = LawReport.ok()
    report.result.update(count=len(found), search_space=[space.first, space.second],
                         structures=[dump(s) for s in found], kind=kind)


def _cmd_roundtrip(req, report):
    (x,) = _need(req, 1)
    report.laws["dump-parse"] = (LawReport.ok() if dump(parse_text(dumps(x))) == dump(x)
                                 else LawReport.fail("dump-parse"))
    rings = [_as_ring(x)] if not isinstance(x, SemicounitalSemicoring) else []
    corings = [_as_coring(x)] if not isinstance(x, SemiunitalSemiring) else []
    for side in _sides(req):
        for s in rings:
            report.laws[f"semiring-{side}"] = semiring_roundtrip(s, side, req.cap)
        for c in corings:
            report.laws[f"semicoring-{side}"] = semicoring_roundtrip(c, side, req.cap)


_DISPATCH = {
    "validate": _cmd_validate,
    "reflect": _cmd_reflect,
    "tensor": _cmd_tensor,
    "check": _cmd_check,
    "convolve": _cmd_convolve,
    "sweedler": _cmd_sweedler,
    "enumerate": _cmd_enumerate,
    "roundtrip": _cmd_roundtrip,
}


def execute(req: CommandRequest) -> RunReport:
    """Run one command; library errors end up in the report, never as exceptions."""
    report = RunReport(req.command, list(req.inputs))
    try:
        if req.command not in _DISPATCH:
            raise SemanticError(f"unknown command {req.command!r}")
        _DISPATCH[req.command](req, report)
    except FinsemiError as exc:
        report.error = exc
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finsemi", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("inputs", nargs="*", help="structure files")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="free-carrier size cap")
    parser.add_argument("--strict", action="store_true", help="require (co)unitary structures")
    parser.add_argument("--suite", help=f"law suite for check: {', '.join(SUITES)}")
    parser.add_argument("--side", choices=("left", "right", "both"), default="both")
    parser.add_argument("--universe", choices=UNIVERSE_LEVELS, default="full",
                        help="jmonad/jcomonad objects: full adds the carrier and its square to A and 0")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    req = CommandRequest(args.command, list(args.inputs), args.cap, args.strict, args.suite, args.side, args.out,
                         args.universe)
    report = execute(req)
    text = report.render_json() if args.format == "json" else report.render_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return report.status


if __name__ == "__main__":
    raise SystemExit(main())
