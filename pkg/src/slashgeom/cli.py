"""slashgeom command line: JSON in, JSON report out.

Exit codes: 0 when every verdict is positive, 1 when one is negative (the
report names the clause and carries a witness), 2 for input errors.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import lie as L
from . import orbits as O
from . import serialize as ser
from . import slash as SL
from .linalg import equal, eye
from .errors import (
    NotASlashStructure, NotInAnyOrbit, NotInOrbit, SlashError, ToleranceExceeded,
    UnsupportedOrbit,
)

BUILTIN_LIE = {"heisenberg": L.heisenberg_times_r}


class InputError(Exception):
    pass


# ------------------------------------------------------------------ input

def _line_hint(text, token):
    if token is None:
        return None
    needle = json.dumps(token) if not isinstance(token, str) else json.dumps(token)
    for k, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return k, line
    return None


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {line}") from None


def _decode(path, decoder):
    obj, text = _load_json(path)
    try:
        return decoder(obj)
    except ser.DecodeError as exc:
        token = _node_at(obj, exc.path)
        hint = _line_hint(text, token)
        where = f"{path}:{hint[0]}" if hint else path
        ctx = f"\n    {hint[1].strip()}" if hint else ""
        raise InputError(f"{where}: {exc}{ctx}") from None
    except (SlashError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _node_at(obj, path):
    """Follow a "$.a[0].b" path as far as it goes; return the scalar found there."""
    import re

    node = obj
    for key, idx in re.findall(r"\.([^.\[]+)|\[(\d+)\]", path):
        try:
            node = node[int(idx)] if idx else node[key]
        except (KeyError, IndexError, TypeError):
            return None
    return node if isinstance(node, (str, int, float)) else None


def _matrix(path):
    return _decode(path, ser.decode_matrix)


def _lie(spec):
    if spec is None:
        return None
    if spec in BUILTIN_LIE:
        return BUILTIN_LIE[spec]()
    return _decode(spec, ser.decode_lie)


def _structure(args):
    if args.side == SL.COMPLEX:
        if args.j is None or args.omega is not None:
            raise InputError("the complex side needs --j (and no --omega)")
        return _matrix(args.j)
    if args.omega is None or args.j is not None:
        raise InputError("the symplectic side needs --omega (and no --j)")
    return _matrix(args.omega)


def _sizes(S, structure, what="S"):
    if S.shape != (2 * structure.shape[0], 2 * structure.shape[0]):
        raise InputError(f"{what} is {S.shape[0]}x{S.shape[1]} but the base structure is "
                         f"{structure.shape[0]}x{structure.shape[1]}; expected {2 * structure.shape[0]}")


# --------------------------------------------------------------- pipelines

def _check_one(side, lam, ell, S, structure, g=None, plus_only=False):
    """Algebraic check, signature where defined, integrability when g is given."""
    try:
        if side == SL.COMPLEX:
            rep = SL.check_slash_complex(S, structure, lam, ell)
        else:
            rep = SL.check_slash_symplectic(S, structure, lam, ell)
    except SlashError as exc:
        raise InputError(str(exc)) from None
    out = {"report": ser.encode_report(rep)}
    ok = rep.ok
    if rep.ok and (side, lam, ell) == (SL.COMPLEX, 1, 1):
        sig = SL.sig_complex_11(S, structure)
        out["sig"] = sig.n
        out["signature"] = ser.encode_signature(sig)
    elif rep.ok and (side, lam, ell) == (SL.SYMPLECTIC, -1, 1):
        sig = SL.sig_symplectic_m11(S, structure)
        out["sig"] = sig.n
        out["signature"] = ser.encode_signature(sig)
    if g is not None and rep.ok:
        if g.dim != structure.shape[0]:
            raise InputError(f"Lie algebra has dimension {g.dim}, structure acts on R^{structure.shape[0]}")
        kw = {"j": structure} if side == SL.COMPLEX else {"omega": structure}
        v = L.is_integrable_slash(S, lam, plus_only, g, ell=ell, **kw)
        out["integrability"] = {"integrable": v.integrable, "spaces": dict(v.spaces)}
        ok = ok and v.integrable
        if not v.integrable:
            bad = [k for k, good in v.spaces.items() if not good]
            out["failed_clause"] = f"involutivity of the {bad[0]} eigenbundle"
    if not rep.ok:
        out["failed_clause"] = rep.failed_clause
    out["ok"] = ok
    return out


def _batch_entry(entry):
    k, job = entry
    p = f"$[{k}]"
    try:
        side = job.get("side", SL.COMPLEX)
        lam, ell = int(job["lambda"]), int(job["ell"])
        S = ser.decode_matrix(job["S"], f"{p}.S")
        key = "j" if side == SL.COMPLEX else "omega"
        structure = ser.decode_matrix(job[key], f"{p}.{key}")
        g = None
        if "lie" in job:
            g = BUILTIN_LIE[job["lie"]]() if isinstance(job["lie"], str) else ser.decode_lie(job["lie"], f"{p}.lie")
        _sizes(S, structure)
        return _check_one(side, lam, ell, S, structure, g, bool(job.get("plus_only", False)))
    except (KeyError, ValueError, TypeError, InputError, SlashError) as exc:
        return {"ok": False, "input_error": f"{p}: {exc}"}


def cmd_check(args):
    if args.batch:
        jobs, _ = _load_json(args.batch)
        if not isinstance(jobs, list):
            raise InputError(f"{args.batch}: a batch file is a JSON array of jobs")
        entries = list(enumerate(jobs))
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_batch_entry, entries))
        else:
            results = [_batch_entry(e) for e in entries]
        bad_input = [r["input_error"] for r in results if "input_error" in r]
        if bad_input:
            raise InputError("\n".join(bad_input))
        return {"command": "check", "batch": results}, all(r["ok"] for r in results)
    _need(args, "S", "lambda", "ell")
    structure = _structure(args)
    S = _matrix(args.S)
    _sizes(S, structure)
    out = _check_one(args.side, args.lam, args.ell, S, structure, _lie(args.lie), args.plus_only)
    return {"command": "check", **out}, out["ok"]


def cmd_signature(args):
    _need(args, "S")
    structure = _structure(args)
    S = _matrix(args.S)
    _sizes(S, structure)
    try:
        if args.side == SL.COMPLEX:
            sig = SL.sig_complex_11(S, structure)
        else:
            sig = SL.sig_symplectic_m11(S, structure)
    except NotASlashStructure as exc:
        lam, ell = (1, 1) if args.side == SL.COMPLEX else (-1, 1)
        check = SL.check_slash_complex if args.side == SL.COMPLEX else SL.check_slash_symplectic
        rep = check(S, structure, lam, ell)
        return {"command": "signature", "ok": False, "failed_clause": exc.clause,
                "report": ser.encode_report(rep)}, False
    return {"command": "signature", "ok": True, "sig": sig.n,
            "signature": ser.encode_signature(sig)}, True


def cmd_classify(args):
    _need(args, "S")
    structure = _structure(args)
    S = _matrix(args.S)
    _sizes(S, structure)
    try:
        label = O.classify(S, structure, args.side, ell=args.ell)
    except NotInAnyOrbit as exc:
        check = SL.check_slash_complex if args.side == SL.COMPLEX else SL.check_slash_symplectic
        out = {"command": "classify", "ok": False, "failed_clause": exc.clause}
        N = S.shape[0]
        lam = next((x for x in (1, -1) if equal(S @ S, x * eye(N))), None)
        if lam is not None:
            out["report"] = ser.encode_report(check(S, structure, lam, args.ell or 1))
        return out, False
    out = {"command": "classify", "ok": True, "label": ser.encode_label(label),
           "group_dimension": O.group_dimension(label)}
    if args.conjugator:
        constant = 2 if args.paper_normalization else 1
        try:
            res = O.conjugator(S, label, structure, tolerance=args.tolerance, constant=constant)
        except UnsupportedOrbit as exc:
            out["conjugator"] = {"unsupported": str(exc)}
        except ToleranceExceeded as exc:
            out.update(ok=False, failed_clause="conjugator residual within tolerance",
                       conjugator={"residuals": exc.residuals})
            return out, False
        except NotInOrbit as exc:
            out.update(ok=False, failed_clause="conjugator verification", conjugator={"error": str(exc)})
            return out, False
        else:
            out["conjugator"] = ser.encode_conjugator(res) | {"normalization": constant,
                                                             "basis": ser.encode_matrix(res.basis)}
    return out, True


def cmd_courant(args):
    _need(args, "lie", "x", "y")
    g = _lie(args.lie)
    x = _decode(args.x, ser.decode_extended)
    y = _decode(args.y, ser.decode_extended)
    for name, v in (("--x", x), ("--y", y)):
        if v.n != g.dim:
            raise InputError(f"{name} has length {v.n}, the algebra has dimension {g.dim}")
    out = {"command": "courant", "bracket": ser.encode_extended(L.courant_bracket_li(x, y, g))}
    ok = True
    if args.two_form:
        theta = _matrix(args.two_form)
        if theta.shape != (g.dim, g.dim):
            raise InputError(f"--two-form must be {g.dim}x{g.dim}")
        d = L.d_two_form(theta, g)
        closed = all(v == 0 for v in d.values())
        out["closed"] = closed
        if not closed:
            (a, b, c), val = next((k, v) for k, v in d.items() if v != 0)
            out["failed_clause"] = "d theta = 0"
            out["witness"] = {"indices": [a + 1, b + 1, c + 1], "value": ser.encode_scalar(val)}
        ok = closed
    out["ok"] = ok
    return out, ok


def cmd_bfield(args):
    _need(args, "S", "omega2", "lambda", "ell")
    if args.side != SL.COMPLEX:
        raise InputError("bfield works on the complex side (give --j)")
    structure = _structure(args)
    S = _matrix(args.S)
    _sizes(S, structure)
    w2 = _matrix(args.omega2)
    if w2.shape != structure.shape:
        raise InputError("--omega2 and --j differ in size")
    try:
        T = SL.bfield(w2, S)
    except ValueError as exc:
        raise InputError(f"{args.omega2}: {exc}") from None
    g = _lie(args.lie)
    preserves = SL.bfield_preserves(w2, structure, args.lam, args.ell)
    before = _check_one(args.side, args.lam, args.ell, S, structure, g, args.plus_only)
    after = _check_one(args.side, args.lam, args.ell, T.matrix, structure, g, args.plus_only)
    out = {"command": "bfield", "preserves": preserves, "before": before, "after": after,
           "S_transformed": ser.encode_matrix(T)}
    if g is not None:
        out["omega2_closed"] = L.d_closed_2form(w2, g)
    ok = preserves and before["ok"] and after["ok"]
    if not preserves:
        out["failed_clause"] = "B-field commutes with J_ell"
    elif not after["ok"]:
        out["failed_clause"] = after.get("failed_clause")
    out["ok"] = ok
    return out, ok


def cmd_demo(args):
    if args.name != "heisenberg":
        raise InputError(f"unknown demo {args.name!r}; available: heisenberg")
    demo = L.heisenberg_demo()
    try:
        S = demo.s_of(args.c2, args.s2)
    except (SlashError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"--c2/--s2: {exc}") from None
    res = _check_one(SL.COMPLEX, 1, 1, S.matrix, demo.j, demo.g)
    obs = L.nontrivial_obstruction(S, demo.j, demo.g, 1, 1)
    out = {
        "command": "demo", "demo": "heisenberg",
        "c2": ser.encode_rational(ser._rational(args.c2, "--c2")),
        "s2": ser.encode_rational(ser._rational(args.s2, "--s2")),
        "S": ser.encode_matrix(S),
        **res,
        "obstruction": obs.label,
        "decompositions": {
            d.kind: {"found": d.found, "reason": d.reason, "data": d.data}
            for d in (obs.diagonal, obs.antidiagonal)
        },
    }
    return out, res["ok"]


def cmd_orbit_dim(args):
    _need(args, "lambda", "ell", "m")
    try:
        label = O.OrbitLabel(args.side, args.lam, args.ell, args.m, args.n)
    except SlashError as exc:
        raise InputError(str(exc)) from None
    nf = O.normal_form(label)
    gd = O.group_dimension(label)
    ld = O.linearized_dimension(nf.S, label)
    td = O.orbit_tangent_dimension(nf.S, label)
    ok = gd == ld == td
    out = {"command": "orbit-dim", "label": ser.encode_label(label), "group_dimension": gd,
           "linearized_dimension": ld, "orbit_tangent_dimension": td, "ok": ok}
    if not ok:
        out["failed_clause"] = "dimension oracles agree"
    return out, ok


def _need(args, *names):
    missing = [n for n in names if getattr(args, "lam" if n == "lambda" else n, None) is None]
    if missing:
        raise InputError("missing required option(s): " + ", ".join("--" + n for n in missing))


# ------------------------------------------------------------------ parser

def _sign(text):
    if text not in ("1", "-1", "+1"):
        raise argparse.ArgumentTypeError(f"expected 1 or -1, got {text!r}")
    return int(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--side", choices=[SL.COMPLEX, SL.SYMPLECTIC], default=SL.COMPLEX)
    common.add_argument("--lambda", dest="lam", type=_sign)
    common.add_argument("--ell", type=_sign)
    common.add_argument("--j", help="complex structure j on V (matrix JSON)")
    common.add_argument("--omega", help="symplectic form omega on V (matrix JSON)")
    common.add_argument("--S", help="endomorphism of V + V* (matrix JSON)")
    common.add_argument("--lie", help="Lie algebra JSON, or the built-in name 'heisenberg'")
    common.add_argument("--plus-only", action="store_true",
                        help="for lambda = 1 test only the +1 eigenbundle")
    common.add_argument("--paper-normalization", action="store_true",
                        help="normalise adapted bases with constant 2 instead of 1")
    common.add_argument("--tolerance", type=float, default=O.DEFAULT_TOLERANCE,
                        help="max-abs residual for the floating conjugator backend")

    p = argparse.ArgumentParser(prog="slashgeom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="membership (and integrability) check")
    c.add_argument("--batch", help="JSON array of jobs {side, lambda, ell, S, j|omega[, lie]}")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_check)
    sub.add_parser("signature", parents=[common], help="sig of a (1,1) / (-1,1) structure").set_defaults(
        func=cmd_signature)
    c = sub.add_parser("classify", parents=[common], help="orbit label, optionally a conjugator")
    c.add_argument("--conjugator", action="store_true")
    c.set_defaults(func=cmd_classify)
    c = sub.add_parser("courant", parents=[common], help="left-invariant Courant bracket")
    c.add_argument("--x", help="extended vector JSON {vec, covec}")
    c.add_argument("--y", help="extended vector JSON {vec, covec}")
    c.add_argument("--two-form", help="also report whether this 2-form is closed")
    c.set_defaults(func=cmd_courant)
    c = sub.add_parser("bfield", parents=[common], help="transform S by a B-field")
    c.add_argument("--omega2", help="2-form of the B-field (matrix JSON)")
    c.set_defaults(func=cmd_bfield)
    c = sub.add_parser("demo", parents=[common], help="built-in demos")
    c.add_argument("name", choices=["heisenberg"])
    c.add_argument("--c2", default="1", help="cos 2t as a rational")
    c.add_argument("--s2", default="0", help="sin 2t as a rational")
    c.set_defaults(func=cmd_demo)
    c = sub.add_parser("orbit-dim", parents=[common], help="orbit dimension oracles for a label")
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.set_defaults(func=cmd_orbit_dim)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if args.tolerance <= 0:
        parser.error("--tolerance must be positive")
    try:
        report, ok = args.func(args)
    except InputError as exc:
        print(f"slashgeom: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(ser.dumps(report))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
