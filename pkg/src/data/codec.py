# src/data/codec.py
"""
JSON forms of sign systems, skew polynomials, substitutions, matrix
factorizations and their morphisms.

    SignSystem       {"n": 3, "eps": [[1, -1, -1], ...], "names": [...]?}
    SkewPoly         {"n": 3, "eps": [...], "terms": [{"coeff": "1/2-i", "exps": [1, 0, 1]}]}
    MF               {"ctx": SignSystem, "f": terms, "r": 2, "m0": [...], "m1": [...],
                      "Phi0": [[terms]], "Phi1": [[terms]]}
    MFMorphism       {"source": MF, "target": MF, "mu0": [[terms]], "mu1": [[terms]]}
"""
from typing import Any, Dict, List, Optional

from src.algebra.mf import MatrixFactorization, MFMorphism
from src.algebra.skewpoly import LinearSubstitution, SignSystem, SkewPoly, format_coeff, parse_coeff
from src.utils.errors import MalformedInput, SkewQuadricError


def _require(obj: Any, key: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"missing field {key!r}")
    return obj[key]


# ================= SignSystem =================

def encode_sign_system(ctx: SignSystem) -> Dict[str, Any]:
    out: Dict[str, Any] = {"n": ctx.n, "eps": [list(row) for row in ctx.eps]}
    if ctx.names is not None:
        out["names"] = list(ctx.names)
    return out


def decode_sign_system(obj: Any) -> SignSystem:
    """Accepts an eps matrix (diagonal may be anything) or an edge list."""
    n = _require(obj, "n")
    names = obj.get("names")
    try:
        if "eps" in obj:
            return SignSystem.from_matrix(obj["eps"], names)
        if "edges" in obj:
            return SignSystem.from_edges(int(n), [tuple(e) for e in obj["edges"]], names)
    except SkewQuadricError:
        raise
    except (TypeError, ValueError, IndexError) as e:
        raise MalformedInput(f"invalid sign system: {e}") from e
    raise MalformedInput("sign system needs 'eps' or 'edges'")


# ================= SkewPoly =================

def encode_terms(p: SkewPoly) -> List[Dict[str, Any]]:
    return [{"coeff": format_coeff(c), "exps": list(exps)} for exps, c in p.sorted_terms()]


def decode_terms(ctx: SignSystem, terms: Any) -> SkewPoly:
    if not isinstance(terms, list):
        raise MalformedInput("polynomial terms must be a list")
    acc = SkewPoly.zero(ctx)
    for term in terms:
        raw = _require(term, "coeff")
        exps = _require(term, "exps")
        if not isinstance(exps, list) or len(exps) != ctx.n:
            raise MalformedInput(f"exponent vector {exps!r} does not have length {ctx.n}")
        try:
            c = parse_coeff(str(raw))
            acc = acc + SkewPoly(ctx, {tuple(int(e) for e in exps): c})
        except SkewQuadricError:
            raise
        except (TypeError, ValueError) as e:
            raise MalformedInput(f"invalid term {term!r}: {e}") from e
    return acc


def encode_poly(p: SkewPoly) -> Dict[str, Any]:
    out = encode_sign_system(p.ctx)
    out["terms"] = encode_terms(p)
    return out


def decode_poly(obj: Any, ctx: Optional[SignSystem] = None) -> SkewPoly:
    ctx = ctx or decode_sign_system(obj)
    return decode_terms(ctx, _require(obj, "terms"))


# ================= Substitutions =================

def encode_substitution(sub: LinearSubstitution) -> Dict[str, Any]:
    return {
        "source": encode_sign_system(sub.source),
        "target": encode_sign_system(sub.target),
        "images": [encode_terms(img) for img in sub.images],
    }


def decode_substitution(obj: Any) -> LinearSubstitution:
    source = decode_sign_system(_require(obj, "source"))
    target = decode_sign_system(obj["target"]) if "target" in obj else source
    images = tuple(decode_terms(target, terms) for terms in _require(obj, "images"))
    return LinearSubstitution(source, target, images)


# ================= Matrix factorizations =================

def _encode_matrix(matrix) -> List[List[List[Dict[str, Any]]]]:
    return [[encode_terms(entry) for entry in row] for row in matrix]


def _decode_matrix(ctx: SignSystem, raw: Any, name: str) -> List[List[SkewPoly]]:
    if not isinstance(raw, list) or any(not isinstance(row, list) for row in raw):
        raise MalformedInput(f"{name} must be a list of rows")
    return [[decode_terms(ctx, entry) for entry in row] for row in raw]


def encode_mf(mf: MatrixFactorization) -> Dict[str, Any]:
    return {
        "ctx": encode_sign_system(mf.ctx),
        "f": encode_terms(mf.f),
        "r": mf.r,
        "m0": list(mf.m0),
        "m1": list(mf.m1),
        "Phi0": _encode_matrix(mf.phi0),
        "Phi1": _encode_matrix(mf.phi1),
    }


def decode_mf(obj: Any) -> MatrixFactorization:
    ctx = decode_sign_system(_require(obj, "ctx"))
    f = decode_terms(ctx, _require(obj, "f"))
    m0, m1 = _require(obj, "m0"), _require(obj, "m1")
    r = int(obj.get("r", len(m0)))
    if len(m0) != r:
        raise MalformedInput(f"r={r} but m0 has {len(m0)} entries")
    return MatrixFactorization.build(
        ctx, f, m0, m1,
        _decode_matrix(ctx, _require(obj, "Phi0"), "Phi0"),
        _decode_matrix(ctx, _require(obj, "Phi1"), "Phi1"),
    )


def encode_morphism(mu: MFMorphism) -> Dict[str, Any]:
    return {
        "source": encode_mf(mu.source),
        "target": encode_mf(mu.target),
        "mu0": _encode_matrix(mu.mu0),
        "mu1": _encode_matrix(mu.mu1),
    }


def decode_morphism(obj: Any) -> MFMorphism:
    source = decode_mf(_require(obj, "source"))
    target = decode_mf(_require(obj, "target"))
    ctx = source.ctx
    mu0 = _decode_matrix(ctx, _require(obj, "mu0"), "mu0")
    mu1 = _decode_matrix(ctx, _require(obj, "mu1"), "mu1")
    return MFMorphism(source, target, tuple(map(tuple, mu0)), tuple(map(tuple, mu1)))
