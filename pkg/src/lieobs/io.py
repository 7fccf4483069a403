"""JSON readers and writers for algebras, modules, cochains, couplings and reports.

Rationals are written as "p/q" strings ("p" when q = 1).  Readers raise
``ParseError`` for anything that does not fit the schema; mathematical
validation is left to the library.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .ce import Cochain, CohomologyClass, TModule
from .coup import CombineResult, CoupElement, make_element
from .errors import LieObsError
from .lie import LieAlgebra, abelian
from .linalg import Matrix, format_fraction, to_fraction
from .obstruction import Coupling, ExtensionResult, ObstructionResult, validate_coupling


class ParseError(LieObsError):
    pass


def rat(q) -> str:
    return format_fraction(to_fraction(q))


def rats(values) -> list[str]:
    return [rat(v) for v in values]


def _rational(x):
    try:
        return to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {x!r}") from exc


def _require(obj: dict, key: str, kind=None):
    if not isinstance(obj, dict):
        raise ParseError(f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"missing key {key!r}")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or (kind is int and isinstance(value, bool))):
        raise ParseError(f"key {key!r} has the wrong type")
    return value


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- matrices


def parse_matrix(data, rows: int | None = None, cols: int | None = None) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("matrix must be a list of rows")
    if rows is not None and len(data) != rows:
        raise ParseError(f"matrix must have {rows} rows")
    width = cols if cols is not None else (len(data[0]) if data else 0)
    if any(len(r) != width for r in data):
        raise ParseError(f"matrix rows must all have {width} entries")
    return Matrix(len(data), width, tuple(tuple(_rational(x) for x in r) for r in data))


def matrix_json(m: Matrix) -> list:
    return [rats(r) for r in m.data]


# ---------------------------------------------------------------- Lie algebras


def parse_algebra(data) -> LieAlgebra:
    if isinstance(data, dict) and "abelian" in data and "dim" not in data:
        m = data["abelian"]
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise ParseError("'abelian' must be a non-negative integer")
        return abelian(m)
    n = _require(data, "dim", int)
    if n < 0:
        raise ParseError("dimension must be non-negative")
    names = data.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise ParseError("'basis' must list one name per dimension")
    brackets = []
    for entry in data.get("brackets", []):
        i = _require(entry, "i", int)
        j = _require(entry, "j", int)
        if not (0 <= i < j < n):
            raise ParseError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
        for term in _require(entry, "terms", list):
            k = _require(term, "k", int)
            if not 0 <= k < n:
                raise ParseError(f"term index {k} out of range")
            brackets.append((i, j, k, _rational(_require(term, "v"))))
    return LieAlgebra(n, tuple(brackets), tuple(str(s) for s in names) if names else ())


def algebra_json(g: LieAlgebra) -> dict:
    grouped: dict = {}
    for i, j, k, v in g.brackets:
        grouped.setdefault((i, j), []).append({"k": k, "v": rat(v)})
    return {
        "dim": g.dim,
        "basis": list(g.basis_names),
        "brackets": [{"i": i, "j": j, "terms": terms} for (i, j), terms in sorted(grouped.items())],
    }


# ---------------------------------------------------------------- modules and cochains


def parse_module(data) -> TModule:
    base = parse_algebra(_require(data, "base"))
    d = _require(data, "module_dim", int)
    action = _require(data, "action", list)
    if len(action) != base.dim:
        raise ParseError(f"need {base.dim} action matrices")
    return TModule(base, d, tuple(parse_matrix(a, d, d) for a in action))


def module_json(m: TModule) -> dict:
    return {"base": algebra_json(m.base), "module_dim": m.module_dim, "action": [matrix_json(a) for a in m.action]}


def parse_cochain(data, module: TModule) -> Cochain:
    k = _require(data, "degree", int)
    values = {}
    for entry in _require(data, "values", list):
        t = tuple(_require(entry, "tuple", list))
        v = _require(entry, "v", list)
        if len(v) != module.module_dim:
            raise ParseError("cochain value has the wrong length")
        if len(t) != k or any(not isinstance(i, int) or not 0 <= i < module.base.dim for i in t):
            raise ParseError(f"bad index tuple {list(t)}")
        values[t] = [_rational(x) for x in v]
    try:
        return Cochain.from_mapping(module, k, values)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cochain_json(c: Cochain) -> dict:
    return {"degree": c.degree, "values": [{"tuple": list(t), "v": rats(v)} for t, v in c.items()]}


def class_json(c: CohomologyClass) -> list[str]:
    return rats(c.coordinates)


# ---------------------------------------------------------------- couplings


def parse_coupling_parts(data) -> tuple[LieAlgebra, LieAlgebra, list[Matrix]]:
    base = parse_algebra(_require(data, "base"))
    fiber = parse_algebra(_require(data, "fiber"))
    xi = _require(data, "xi", list)
    if len(xi) != base.dim:
        raise ParseError(f"need {base.dim} coupling matrices, got {len(xi)}")
    return base, fiber, [parse_matrix(m, fiber.dim, fiber.dim) for m in xi]


def parse_coupling(data) -> Coupling:
    return validate_coupling(*parse_coupling_parts(data))


def coupling_json(c: Coupling) -> dict:
    return {"base": algebra_json(c.base), "fiber": algebra_json(c.fiber), "xi": [matrix_json(m) for m in c.xi_reps]}


def obstruction_json(r: ObstructionResult) -> dict:
    return {
        "center_dim": r.center_dim,
        "betti3": r.betti3,
        "cocycle": cochain_json(r.cocycle),
        "class": class_json(r.cls),
        "trivial": r.trivial,
    }


def extension_json(e: ExtensionResult) -> dict:
    return {
        "extended": True,
        "algebra": algebra_json(e.total),
        "anchor": matrix_json(e.anchor.matrix),
        "kernel_inclusion": matrix_json(e.kernel_inclusion.matrix),
    }


def parse_element(data) -> CoupElement:
    coupling = parse_coupling(_require(data, "coupling"))
    reference = parse_module(_require(data, "reference"))
    phi = parse_matrix(_require(data, "phi", list))
    if phi.rows == 0:
        phi = Matrix.zeros(0, coupling.zmodule.module_dim)
    return make_element(coupling, reference, phi)


def element_json(e: CoupElement) -> dict:
    return {"coupling": coupling_json(e.coupling), "reference": module_json(e.reference), "phi": matrix_json(e.phi)}


def combine_json(r: CombineResult) -> dict:
    return {
        "alpha": rat(r.alpha),
        "beta": rat(r.beta),
        "class1": class_json(r.audit.class1),
        "class2": class_json(r.audit.class2),
        "class3": class_json(r.audit.class3),
        "linearity": "pass",
    }
