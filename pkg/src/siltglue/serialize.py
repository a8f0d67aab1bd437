"""JSON interchange for algebras, complexes, and chain maps (schema v=1).

Algebra files fix vertex and arrow order, which in turn fixes the path-basis
order and all downstream determinism.  Complex files reference their algebra
by path; matrix entries are lists of [pathspec, coeff] pairs where a
pathspec is "e:<vertex>" for a trivial path or a list of arrow names.
"""

import json
import os
from fractions import Fraction

from .fields import QQ, PrimeField, field_from_tag
from .quiver import Quiver, build_algebra
from .complexes import ChainMap, PathMatrix, ProjComplex


class SerializeError(ValueError):
    pass


def _check_version(data, what):
    if not isinstance(data, dict):
        raise SerializeError(f"{what}: expected a JSON object")
    v = data.get("v", 1)
    if v != 1:
        raise SerializeError(f"{what}: unsupported schema version {v!r}")


# ---------------------------------------------------------------------------
# algebras


def algebra_to_json(alg):
    return {
        "v": 1,
        "field": alg.field.tag,
        "vertices": list(alg.quiver.vertices),
        "arrows": [
            {"name": a.name, "from": a.source, "to": a.target} for a in alg.quiver.arrows
        ],
    }


def algebra_from_json(data):
    _check_version(data, "algebra")
    for key in ("field", "vertices", "arrows"):
        if key not in data:
            raise SerializeError(f"algebra: missing key {key!r}")
    field = field_from_tag(data["field"])
    arrows = []
    for i, a in enumerate(data["arrows"]):
        for key in ("name", "from", "to"):
            if key not in a:
                raise SerializeError(f"algebra: arrow {i} missing key {key!r}")
        arrows.append((a["name"], a["from"], a["to"]))
    quiver = Quiver(data["vertices"], arrows)
    return build_algebra(quiver, field)


def save_algebra(alg, path):
    with open(path, "w") as fh:
        json.dump(algebra_to_json(alg), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_algebra(path):
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# scalars and elements


def _coeff_out(field, c):
    if field == QQ:
        if c.denominator == 1:
            return int(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return int(c)


def _coeff_in(field, raw):
    try:
        if isinstance(raw, str):
            return field.of(Fraction(raw))
        if isinstance(raw, (int, float)):
            return field.of(Fraction(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializeError(f"bad coefficient {raw!r}: {exc}")
    raise SerializeError(f"bad coefficient {raw!r}")


def _element_out(x):
    alg = x.algebra
    out = []
    for p in sorted(x.terms, key=lambda p: alg.basis_index[p]):
        spec = f"e:{p.source}" if p.is_trivial() else list(p.arrows)
        out.append([spec, _coeff_out(alg.field, x.terms[p])])
    return out


def _element_in(alg, raw):
    terms = {}
    if not isinstance(raw, list):
        raise SerializeError(f"bad matrix entry {raw!r}")
    for item in raw:
        if not isinstance(item, list) or len(item) != 2:
            raise SerializeError(f"bad term {item!r}")
        spec, coeff = item
        if isinstance(spec, str):
            if not spec.startswith("e:"):
                raise SerializeError(f"bad pathspec {spec!r}")
            p = alg.trivial_path(spec[2:])
        elif isinstance(spec, list):
            p = alg.path_of_arrows(spec)
        else:
            raise SerializeError(f"bad pathspec {spec!r}")
        c = _coeff_in(alg.field, coeff)
        terms[p] = alg.field.add(terms.get(p, alg.field.zero), c)
    return alg.element(terms)


# ---------------------------------------------------------------------------
# complexes


def complex_to_json(X, algebra_ref=None):
    data = {
        "v": 1,
        "components": {str(n): list(vs) for n, vs in sorted(X.components.items())},
        "differentials": {},
    }
    if algebra_ref is not None:
        data["algebra"] = algebra_ref
    for n, d in sorted(X.differentials.items()):
        if d.is_zero():
            continue
        data["differentials"][str(n)] = [
            [_element_out(x) for x in row] for row in d.entries
        ]
    return data


def complex_from_json(data, algebra=None, base_dir=None):
    _check_version(data, "complex")
    if algebra is None:
        ref = data.get("algebra")
        if ref is None:
            raise SerializeError("complex: no algebra given and no 'algebra' reference")
        path = ref if os.path.isabs(ref) or base_dir is None else os.path.join(base_dir, ref)
        algebra = load_algebra(path)
    comps = {}
    for key, vs in data.get("components", {}).items():
        try:
            n = int(key)
        except ValueError:
            raise SerializeError(f"complex: bad degree key {key!r}")
        comps[n] = tuple(vs)
    diffs = {}
    for key, rows in data.get("differentials", {}).items():
        try:
            n = int(key)
        except ValueError:
            raise SerializeError(f"complex: bad degree key {key!r}")
        tgt = comps.get(n + 1, ())
        src = comps.get(n, ())
        if len(rows) != len(tgt):
            raise SerializeError(f"complex: differential {n} has {len(rows)} rows, expected {len(tgt)}")
        ents = []
        for row in rows:
            if len(row) != len(src):
                raise SerializeError(f"complex: differential {n} row length mismatch")
            ents.append([_element_in(algebra, x) for x in row])
        diffs[n] = PathMatrix(algebra, tgt, src, ents)
    return ProjComplex(algebra, comps, diffs)


def save_complex(X, path, algebra_ref=None):
    with open(path, "w") as fh:
        json.dump(complex_to_json(X, algebra_ref), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_complex(path, algebra=None):
    with open(path) as fh:
        data = json.load(fh)
    return complex_from_json(data, algebra=algebra, base_dir=os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# chain maps


def chain_map_to_json(f):
    return {
        "v": 1,
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "components": {
            str(n): [[_element_out(x) for x in row] for row in m.entries]
            for n, m in sorted(f.components.items())
            if not m.is_zero()
        },
    }


def chain_map_from_json(data, algebra):
    _check_version(data, "chain map")
    src = complex_from_json(data["source"], algebra=algebra)
    tgt = complex_from_json(data["target"], algebra=algebra)
    comps = {}
    for key, rows in data.get("components", {}).items():
        n = int(key)
        ents = [[_element_in(algebra, x) for x in row] for row in rows]
        comps[n] = PathMatrix(algebra, tgt.component(n), src.component(n), ents)
    return ChainMap(src, tgt, comps)
