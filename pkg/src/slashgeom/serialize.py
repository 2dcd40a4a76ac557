"""JSON encodings for scalars, matrices, Lie algebras and reports.

Rationals are strings "p/q" (reduced, q > 0) or "p"; Gaussian rationals are
{"re", "im"}, Lorentz numbers {"a", "b"}, quaternions {"w", "x", "y", "z"}.
Matrices are {"algebra": tag, "matrix": rows}.  Lie algebra files list the
brackets [e_i, e_j] for i < j with 1-based indices.
"""

import json
from fractions import Fraction

import numpy as np

from .extended import BlockEndo, ExtendedVector
from .lie import LieAlgebra
from .linalg import matrix_algebra, promote
from .scalars import GaussianRational, LorentzRational, RationalQuaternion, as_rational


class DecodeError(ValueError):
    """Malformed input; ``path`` locates the offending JSON node."""

    def __init__(self, msg, path="$"):
        super().__init__(f"{path}: {msg}")
        self.path = path


def encode_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_scalar(x):
    if isinstance(x, GaussianRational):
        return {"re": encode_rational(x.re), "im": encode_rational(x.im)}
    if isinstance(x, LorentzRational):
        return {"a": encode_rational(x.a), "b": encode_rational(x.b)}
    if isinstance(x, RationalQuaternion):
        return {k: encode_rational(getattr(x, k)) for k in "wxyz"}
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (float, np.floating)):
        return float(x)
    return encode_rational(x)


def _rational(x, path):
    if isinstance(x, bool) or isinstance(x, float):
        raise DecodeError(f"expected an exact rational, got {x!r}", path)
    try:
        return as_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DecodeError(f"bad rational {x!r} ({exc})", path) from None


def decode_scalar(obj, path="$"):
    if isinstance(obj, dict):
        keys = set(obj)
        get = lambda k: _rational(obj[k], f"{path}.{k}")
        if keys == {"re", "im"}:
            return GaussianRational(get("re"), get("im"))
        if keys == {"a", "b"}:
            return LorentzRational(get("a"), get("b"))
        if keys == {"w", "x", "y", "z"}:
            return RationalQuaternion(*(get(k) for k in "wxyz"))
        raise DecodeError(f"unknown scalar encoding with keys {sorted(keys)}", path)
    return _rational(obj, path)


def encode_matrix(M):
    M = M.matrix if isinstance(M, BlockEndo) else np.asarray(M)
    if M.dtype.kind == "f" or (M.dtype == object and M.size and isinstance(M.flat[0], float)):
        return {"algebra": "float", "matrix": [[float(x) for x in row] for row in M]}
    return {"algebra": matrix_algebra(M), "matrix": [[encode_scalar(x) for x in row] for row in M]}


def decode_matrix(obj, path="$"):
    """Accepts {"algebra", "matrix"} or a bare array of rows."""
    algebra = None
    if isinstance(obj, dict):
        if "matrix" not in obj:
            raise DecodeError('matrix object needs a "matrix" field', path)
        algebra = obj.get("algebra")
        rows = obj["matrix"]
        path = f"{path}.matrix"
    else:
        rows = obj
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise DecodeError("expected a non-empty array of rows", path)
    width = len(rows[0])
    out = np.empty((len(rows), width), dtype=object)
    for a, row in enumerate(rows):
        if len(row) != width:
            raise DecodeError(f"row has {len(row)} entries, expected {width}", f"{path}[{a}]")
        for b, x in enumerate(row):
            out[a, b] = decode_scalar(x, f"{path}[{a}][{b}]")
    if algebra is not None:
        try:
            out = promote(out, algebra)
        except (TypeError, ValueError) as exc:
            raise DecodeError(str(exc), path) from None
    return out


def decode_vector(obj, path="$"):
    if not isinstance(obj, list):
        raise DecodeError("expected an array", path)
    out = np.empty(len(obj), dtype=object)
    for k, x in enumerate(obj):
        out[k] = decode_scalar(x, f"{path}[{k}]")
    return out


def encode_vector(v):
    if v is None:
        return None
    return [encode_scalar(x) for x in np.asarray(v, dtype=object).reshape(-1)]


def encode_extended(x):
    return {"vec": encode_vector(x.vec), "covec": encode_vector(x.covec)}


def decode_extended(obj, path="$"):
    if not isinstance(obj, dict) or set(obj) != {"vec", "covec"}:
        raise DecodeError('extended vector needs exactly "vec" and "covec"', path)
    try:
        return ExtendedVector(decode_vector(obj["vec"], f"{path}.vec"),
                              decode_vector(obj["covec"], f"{path}.covec"))
    except ValueError as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(str(exc), path) from None


# ------------------------------------------------------------ Lie algebras

def encode_lie(g):
    brackets = []
    for (i, j), coeffs in sorted(g.brackets().items()):
        brackets.append({"i": i + 1, "j": j + 1,
                         "coeffs": {str(k + 1): encode_rational(v) for k, v in sorted(coeffs.items())}})
    out = {"dim": g.dim, "brackets": brackets}
    if g.name:
        out["name"] = g.name
    return out


def decode_lie(obj, path="$"):
    if not isinstance(obj, dict) or "dim" not in obj:
        raise DecodeError('Lie algebra needs a "dim" field', path)
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DecodeError(f"dim must be a positive integer, got {n!r}", f"{path}.dim")
    table = {}
    for a, entry in enumerate(obj.get("brackets", [])):
        p = f"{path}.brackets[{a}]"
        if not isinstance(entry, dict) or not {"i", "j", "coeffs"} <= set(entry):
            raise DecodeError('bracket entry needs "i", "j" and "coeffs"', p)
        i, j = entry["i"], entry["j"]
        if not all(isinstance(x, int) and 1 <= x <= n for x in (i, j)):
            raise DecodeError(f"indices must lie in 1..{n}", p)
        if i >= j:
            raise DecodeError(f"list brackets with i < j only, got ({i}, {j})", p)
        if (i - 1, j - 1) in table:
            raise DecodeError(f"bracket ({i}, {j}) listed twice", p)
        coeffs = {}
        for k, v in entry["coeffs"].items():
            try:
                kk = int(k)
            except ValueError:
                raise DecodeError(f"bad target index {k!r}", f"{p}.coeffs") from None
            if not 1 <= kk <= n:
                raise DecodeError(f"target index {kk} outside 1..{n}", f"{p}.coeffs")
            coeffs[kk - 1] = _rational(v, f"{p}.coeffs.{k}")
        table[(i - 1, j - 1)] = coeffs
    return LieAlgebra.from_brackets(n, table, name=obj.get("name"))


# ----------------------------------------------------------------- reports

def encode_witness(w):
    if w is None:
        return None
    value = w["value"]
    if isinstance(value, np.ndarray):
        value = encode_vector(value)
    elif not isinstance(value, str):
        value = encode_scalar(value)
    return {"clause": w["clause"], "x": encode_vector(w["x"]), "y": encode_vector(w["y"]),
            "value": value}


def encode_report(rep):
    return {
        "side": rep.side,
        "lambda": rep.lam,
        "ell": rep.ell,
        "ok": rep.ok,
        "squares_ok": rep.squares_ok,
        "skew_ok": rep.skew_ok,
        "split_ok": rep.split_ok,
        "compat_ok": rep.compat_ok,
        "form_criterion_ok": rep.form_criterion_ok,
        "failed_clause": rep.failed_clause,
        "witness": encode_witness(rep.failure_witness),
    }


def encode_signature(sig):
    return {"n": sig.n, "inertia": list(sig.inertia), "shape_ok": sig.shape_ok}


def encode_label(label):
    return label.to_dict() | {"row": label.row}


def encode_conjugator(res):
    return {"backend": res.backend, "residuals": {k: float(v) for k, v in sorted(res.residuals.items())},
            "F": encode_matrix(res.F)}


def _plain(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return encode_matrix(x) if x.ndim == 2 else encode_vector(x)
    if isinstance(x, (Fraction, GaussianRational, LorentzRational, RationalQuaternion)):
        return encode_scalar(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n"
