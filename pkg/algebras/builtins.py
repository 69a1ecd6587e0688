# algebras/builtins.py
import json
import os
import re
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from algebras.schema import AlgebraSpec
from envelope.grassmann import GrassmannMonomial, grassmann_basis, grassmann_multiply
from errors import AlgebraFileError, UnknownBuiltinError

Products = Dict[Tuple[int, int], Dict[int, int]]

BUILTIN_NAMES = ["metabelian", "abelian(d)", "sl2-cartan", "sl2-trivial", "heisenberg"]

# Limits of the n-th root of c_n, printed as reference lines in exponent reports
REFERENCE_EXPONENTS = {
    "metabelian": 1,
    "sl2-cartan": 3,
    "sl2-trivial": 3,
    "heisenberg": 0,
}

_ALIASES = {"sl2": "sl2-trivial"}
_ABELIAN = re.compile(r"^abelian(?:\((\d+)\)|(\d+))$")


def _table(dim: int, products: Products) -> List[List[List[int]]]:
    """Full table from the products [b_i, b_j] = sum c_k b_k with i < j; the rest by anticommutativity"""
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j), terms in products.items():
        for k, c in terms.items():
            table[i][j][k] = c
            table[j][i][k] = -c
    return table


def _metabelian() -> AlgebraSpec:
    # [e,f] = f
    return AlgebraSpec(name="metabelian", dim=2, basis=["e", "f"], grading=(0, 1),
                       table=_table(2, {(0, 1): {1: 1}}))


def _sl2(name: str, grading: Tuple[int, ...]) -> AlgebraSpec:
    # basis e, h, f: [e,h] = -2e, [e,f] = h, [h,f] = -2f
    products = {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}}
    return AlgebraSpec(name=name, dim=3, basis=["e", "h", "f"], grading=grading, table=_table(3, products))


def _heisenberg() -> AlgebraSpec:
    return AlgebraSpec(name="heisenberg", dim=3, basis=["x", "y", "z"], table=_table(3, {(0, 1): {2: 1}}))


def _abelian(d: int) -> AlgebraSpec:
    return AlgebraSpec(name=f"abelian({d})", dim=d, basis=[f"a{i}" for i in range(1, d + 1)], table=_table(d, {}))


def canonical_name(name: str) -> str:
    name = name.strip().lower()
    name = _ALIASES.get(name, name)
    match = _ABELIAN.match(name)
    if match:
        return f"abelian({match.group(1) or match.group(2)})"
    return name


def builtin(name: str) -> AlgebraSpec:
    """Validated builtin algebra by name"""
    canonical = canonical_name(name)
    if canonical == "metabelian":
        return _metabelian()
    if canonical == "sl2-cartan":
        return _sl2("sl2-cartan", (1, 0, 1))
    if canonical == "sl2-trivial":
        return _sl2("sl2-trivial", (0, 0, 0))
    if canonical == "heisenberg":
        return _heisenberg()
    match = _ABELIAN.match(canonical)
    if match:
        return _abelian(int(match.group(1)))
    raise UnknownBuiltinError(f"unknown builtin algebra {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")


def reference_exponent(A: AlgebraSpec) -> Optional[int]:
    if A.name.startswith("abelian("):
        return 0
    return REFERENCE_EXPONENTS.get(A.name)


def _position(error: json.JSONDecodeError) -> Tuple[int, int]:
    return error.lineno, error.colno


def _key_position(text: str, key: str) -> Tuple[Optional[int], Optional[int]]:
    """Line and column of the first `"key":` in the source, 1-based"""
    match = re.search(r'"%s"\s*:' % re.escape(key), text)
    if match is None:
        return None, None
    offset = match.start()
    return text.count("\n", 0, offset) + 1, offset - text.rfind("\n", 0, offset)


def parse_algebra(text: str, source: str = "<string>") -> AlgebraSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        line, column = _position(e)
        raise AlgebraFileError(f"{source}: invalid JSON: {e.msg}", line, column)
    if not isinstance(data, dict):
        raise AlgebraFileError(f"{source}: expected a JSON object at the top level", 1, 1)
    data.setdefault("name", os.path.splitext(os.path.basename(source))[0])
    try:
        return AlgebraSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        # model-level errors are the product laws, which live in the table
        key = str(first["loc"][0]) if first["loc"] else "table"
        where = ".".join(str(part) for part in first["loc"]) or key
        line, column = _key_position(text, key)
        if line is None:
            raise AlgebraFileError(f"{source}: {where}: {first['msg']} (no position in the file)")
        raise AlgebraFileError(f"{source}: {where}: {first['msg']}", line, column)


def load_algebra(name_or_path: str) -> AlgebraSpec:
    """Builtin name, or path to a JSON algebra file"""
    if name_or_path.endswith(".json") or os.path.sep in name_or_path:
        try:
            with open(name_or_path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise AlgebraFileError(f"cannot read {name_or_path}: {e.strerror}")
        return parse_algebra(text, name_or_path)
    return builtin(name_or_path)


def truncated_envelope_algebra(L: AlgebraSpec, generators: int) -> AlgebraSpec:
    """L0 x G0 + L1 x G1 over the Grassmann algebra on `generators` generators, as a finite super-Lie algebra"""
    parity = L.parity
    basis = [(a, g) for a in range(L.dim) for g in grassmann_basis(generators, parity[a])]
    position = {key: i for i, key in enumerate(basis)}
    dim = len(basis)
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for i, (a, g) in enumerate(basis):
        for j, (b, h) in enumerate(basis):
            product = grassmann_multiply(GrassmannMonomial(g), GrassmannMonomial(h))
            if product is None:
                continue
            for c in range(L.dim):
                coefficient = L.structure[a, b, c]
                if coefficient:
                    table[i][j][position[(c, product.generators)]] += product.sign * coefficient
    names = [f"{L.basis_names[a]}.{''.join(map(str, g)) or '1'}" for a, g in basis]
    grading = tuple(len(g) % 2 for _, g in basis)
    return AlgebraSpec(name=f"G{generators}({L.name})", dim=dim, basis=names, grading=grading,
                       table=table, declared_class="super-lie")
