"""Command-line interface.

Exit codes: 0 certified success, 1 certified failure (a verifier produced a
witness against the claim, or a replay did not reproduce), 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import designs, graphio
from .errors import ConventionMismatch, SchemeForgeError, TooLarge, VerificationFailure
from .graphs import (
    ColoredDigraph,
    build_ddg,
    build_dsrg,
    check_sd_square,
    distance_regular_check,
    dsrg_condition,
    predicted_ddg,
    predicted_dsrg,
    relation_graph,
    srg_condition,
    two_path_counts,
    verify_ddg,
    verify_dsrg,
)
from .manifest import RunManifest, VERSION, check_conventions, make_manifest, sha256
from .primes import is_prime, prime_power
from .scheme import star_group, thin_radical, verify_scheme
from .search import bateman_horn_t, search_pairs
from .tatra import ORDERING_CONVENTION, check_product_identities, tatra_omega, tatra_scheme


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


class Failure(Exception):
    """A certified negative result; carries the JSON payload to print."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "failure"))
        self.payload = payload


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"not serializable: {type(x)}")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", ",").split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


# -- parameter validation (names the flag on failure) ----------------------------


def _omega(q: int, n: int):
    if q is None or n is None:
        raise UsageError("--q/--n", "both are required")
    if prime_power(q) is None:
        raise UsageError("--q", f"{q} is not a prime power")
    if n < 1 or (q - 1) % n:
        raise UsageError("--n", f"{n} does not divide q-1 = {q - 1}")
    try:
        return tatra_omega(q, n)
    except SchemeForgeError as exc:
        raise UsageError("--n", str(exc)) from exc


def _dsrg_omega(p: int, q: int):
    if not is_prime(p) or p % 4 != 3:
        raise UsageError("--p", f"{p} must be a prime = 3 mod 4")
    return _omega(q, p)


def _ds(n: int, elements) -> designs.DifferenceSet:
    try:
        return designs.verify_ds(n, elements)
    except designs.NotADS as exc:
        raise UsageError("--ds", f"{sorted(elements)} is not a difference set in Z_{n}: {exc}") from exc


def _read_graph(path: str, fmt: str | None):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError("--input", str(exc)) from exc
    try:
        return graphio.import_graph(data, fmt)
    except (SchemeForgeError, ValueError, KeyError) as exc:
        raise UsageError("--input", f"cannot parse {path}: {exc}") from exc


def _write(path: str | None, data: bytes, out) -> None:
    if path is None or path == "-":
        out.write(data.decode())
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _failure(exc: VerificationFailure, **extra) -> Failure:
    return Failure(dict(extra, certified=False, error=str(exc), witness=exc.witness))


# -- scheme ------------------------------------------------------------------------


def cmd_scheme_build(a, out):
    om = _omega(a.q, a.n)
    colors = np.asarray(om.colors)
    summary = {
        "q": om.q, "n": om.n, "m": om.m, "points": om.size, "rank": 2 * om.n,
        "modulus": om.F.modulus_str(), "ordering": ORDERING_CONVENTION,
        "relations": [om.label_name(i) for i in range(2 * om.n)],
        "colors_sha256": sha256(np.ascontiguousarray(colors, dtype=np.int32).tobytes()),
    }
    if a.out:
        doc = {"colors": colors.tolist(), "names": summary["relations"], "q": om.q, "n": om.n}
        _write(a.out, (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode(), out)
    out.write(_dump(summary))


def cmd_scheme_verify(a, out):
    om = _omega(a.q, a.n)
    X = tatra_scheme(om)
    try:
        cert = verify_scheme(X, mode=a.mode, seed=a.seed)
    except VerificationFailure as exc:
        raise _failure(exc, q=a.q, n=a.n)
    ids = check_product_identities(om)
    thin = thin_radical(X, cert.tensor)
    star = star_group(X, cert.tensor)
    valencies = sorted(cert.valencies)
    expected = sorted([1] * om.n + [om.q] * om.n)
    ok = all(ids.values()) and cert.rank == 2 * om.n and valencies == expected
    payload = dict(cert.to_dict(), q=a.q, n=a.n, identities=ids, certified=ok,
                   thin_radical={"order": thin.order, "cyclic": thin.is_cyclic()},
                   star_group={"order": star.order, "dihedral": star.is_dihedral(), "group": star.is_group()})
    if not ok:
        raise Failure(dict(payload, error="identity or valency check failed"))
    out.write(_dump(payload))


def cmd_scheme_fuse(a, out):
    from .sring import cyclotomic_sring, ds_sring, fuse_scheme, paley_sring

    om = _omega(a.q, a.n)
    X = tatra_scheme(om)
    if a.paley:
        if not is_prime(om.n) or om.n % 4 != 3:
            raise UsageError("--paley", f"n = {om.n} must be a prime = 3 mod 4")
        A = paley_sring(om.n)
    elif a.ds is not None:
        A = ds_sring(om.n, _ds(om.n, a.ds).elements)
    elif a.multipliers is not None:
        try:
            A = cyclotomic_sring(om.n, a.multipliers)
        except ValueError as exc:
            raise UsageError("--multipliers", str(exc)) from exc
    else:
        raise UsageError("--paley/--ds/--multipliers", "choose one S-ring")
    try:
        Y = fuse_scheme(X, A)
        cert = verify_scheme(Y)
    except VerificationFailure as exc:
        raise _failure(exc, q=a.q, n=a.n)
    out.write(_dump(dict(cert.to_dict(), q=a.q, n=a.n, relations=list(Y.names), certified=True)))


def cmd_scheme_aut(a, out):
    from .iso import automorphism_order, predicted_scheme_aut, schurian_check

    om = _omega(a.q, a.n)
    X = tatra_scheme(om)
    try:
        rep = automorphism_order(X)
    except TooLarge as exc:
        raise UsageError("--q/--n", str(exc)) from exc
    enumerated = predicted_scheme_aut(om)
    payload = {
        "q": a.q, "n": a.n, "order": rep.order, "semilinear_image": enumerated,
        "generators": [g.tolist() for g in rep.generators], "base": list(rep.base),
        "schurian": schurian_check(X, rep),
    }
    # the semilinear image is only claimed to be the whole group when n >= 3
    payload["predicted"] = enumerated if om.n >= 3 else None
    payload["certified"] = om.n < 3 or rep.order == enumerated
    if not payload["certified"]:
        raise Failure(dict(payload, error="automorphism order differs from the semilinear image"))
    out.write(_dump(payload))


# -- dsrg / ddg / drg -------------------------------------------------------------


def _dsrg_graph(a):
    om = _dsrg_omega(a.p, a.q)
    if a.i not in (1, 2):
        raise UsageError("--i", f"must be 1 or 2, got {a.i}")
    return om, build_dsrg(om, a.i, a.g)


def _dsrg_certificate(G: ColoredDigraph, extra: dict) -> dict:
    try:
        P = verify_dsrg(G)
    except VerificationFailure as exc:
        raise _failure(exc, **extra)
    return dict(extra, params=list(P.as_tuple()), srg=P.is_srg, certified=True, mode="exhaustive")


def cmd_dsrg_build(a, out):
    om, G = _dsrg_graph(a)
    extra = {"p": a.p, "q": a.q, "i": a.i, "g": a.g % a.p, "vertices": G.vertex_count,
             "degree": int(G.adj[0].sum()), "condition": dsrg_condition(a.p, a.q)}
    if a.out:
        _write(a.out, graphio.export_graph(G.adj, a.format), out)
    if a.verify:
        payload = _dsrg_certificate(G, extra)
        payload["predicted"] = list(predicted_dsrg(a.p, a.q).as_tuple()) if extra["condition"] else None
        out.write(_dump(payload))
    else:
        out.write(_dump(extra))


def cmd_dsrg_verify(a, out):
    if a.input:
        adj, _ = _read_graph(a.input, a.input_format)
        G, extra = ColoredDigraph(adj), {"input": os.path.basename(a.input)}
    else:
        _, G = _dsrg_graph(a)
        extra = {"p": a.p, "q": a.q, "i": a.i, "g": a.g % a.p}
    out.write(_dump(_dsrg_certificate(G, extra)))


def cmd_dsrg_iso(a, out):
    from .iso import explicit_iso_from_matrix, isomorphism_test

    om = _dsrg_omega(a.p, a.q)
    for flag, i in (("--i1", a.i1), ("--i2", a.i2)):
        if i not in (1, 2):
            raise UsageError(flag, f"must be 1 or 2, got {i}")
    G1, G2 = build_dsrg(om, a.i1, a.g1), build_dsrg(om, a.i2, a.g2)
    res = isomorphism_test(G1, G2)
    payload = {"p": a.p, "q": a.q, "first": [a.i1, a.g1 % a.p], "second": [a.i2, a.g2 % a.p],
               "isomorphic": res.isomorphic, "method": res.method,
               "witness": None if res.witness is None else res.witness.tolist(), "certified": True}
    if a.i1 == a.i2 and a.g1 % a.p == 0:
        payload["semilinear_witness"] = explicit_iso_from_matrix(om, a.i1, a.g2).tolist()
    out.write(_dump(payload))


def _ddg_graph(a):
    om = _omega(a.q, a.n)
    if a.ds is None:
        raise UsageError("--ds", "a difference set is required")
    D = _ds(om.n, a.ds)
    return om, D, build_ddg(om, D)


def _ddg_certificate(G, classes, extra, om=None, D=None) -> dict:
    try:
        counts = two_path_counts(G.adj if isinstance(G, ColoredDigraph) else G)
        P = verify_ddg(G, classes, counts=counts)
    except VerificationFailure as exc:
        raise _failure(exc, **extra)
    payload = dict(extra, params=list(P.as_tuple()), proper=P.proper, certified=True, mode="exhaustive")
    if om is not None:
        payload["sd_square_identity"] = check_sd_square(om, D, counts)
        payload["predicted"] = list(predicted_ddg(om.q, om.n, D.k, D.lam).as_tuple())
        flag, srg = srg_condition(om.q, om.n, D.k, D.lam)
        payload["srg_condition"] = flag
        payload["srg_params"] = list(srg) if srg else None
        if flag:
            payload["dsrg_params"] = list(verify_dsrg(G, counts).as_tuple())
        if not payload["sd_square_identity"]:
            raise Failure(dict(payload, certified=False, error="B_D^2 identity failed"))
    return payload


def cmd_ddg_build(a, out):
    om, D, G = _ddg_graph(a)
    extra = {"q": a.q, "n": a.n, "ds": list(D.elements), "ds_params": list(D.params),
             "vertices": G.vertex_count, "degree": int(G.adj[0].sum())}
    if a.out:
        _write(a.out, graphio.export_graph(G.adj, a.format, G.classes if a.format == "adjacency-json" else None), out)
    out.write(_dump(_ddg_certificate(G, G.classes, extra, om, D) if a.verify else extra))


def cmd_ddg_verify(a, out):
    if a.input:
        adj, classes = _read_graph(a.input, a.input_format)
        if a.class_size:
            if len(adj) % a.class_size:
                raise UsageError("--class-size", f"{a.class_size} does not divide {len(adj)}")
            classes = np.arange(len(adj)) // a.class_size
        if classes is None:
            raise UsageError("--class-size", "input has no class partition; pass --class-size")
        out.write(_dump(_ddg_certificate(ColoredDigraph(adj), classes, {"input": os.path.basename(a.input)})))
        return
    om, D, G = _ddg_graph(a)
    out.write(_dump(_ddg_certificate(G, G.classes, {"q": a.q, "n": a.n, "ds": list(D.elements)}, om, D)))


def cmd_drg_check(a, out):
    if a.input:
        adj, _ = _read_graph(a.input, a.input_format)
        extra = {"input": os.path.basename(a.input)}
    else:
        om = _omega(a.q, a.n)
        adj = relation_graph(om, [om.n + a.g % om.n]).adj
        extra = {"q": a.q, "n": a.n, "g": a.g % om.n,
                 "predicted": f"({om.q},{(om.n - 1) * om.m},1;1,{om.m},{om.q})"}
    try:
        cert = distance_regular_check(adj, a.diameter)
    except VerificationFailure as exc:
        raise _failure(exc, **extra)
    except SchemeForgeError as exc:  # Disconnected
        raise Failure(dict(extra, certified=False, error=str(exc), witness=None))
    out.write(_dump(dict(extra, intersection_array=str(cert), b=list(cert.b), c=list(cert.c),
                         diameter=cert.diameter, antipodal=cert.antipodal,
                         antipodal_class_size=cert.antipodal_class_size, certified=True)))


# -- ds -------------------------------------------------------------------------------


def cmd_ds_make(a, out):
    try:
        if a.paley is not None:
            D = designs.paley_ds(a.paley)
        elif a.singer is not None:
            D = designs.singer_ds(*a.singer)
        elif a.trivial is not None:
            D = designs.trivial_ds(a.n, a.trivial)
        else:
            raise UsageError("--paley/--singer/--trivial", "choose a construction")
    except SchemeForgeError as exc:
        flag = "--paley" if a.paley is not None else "--singer" if a.singer is not None else "--n"
        raise UsageError(flag, str(exc)) from exc
    if a.complement:
        D = D.complement()
    out.write(_dump(dict(D.to_dict(), certified=True)))


def cmd_ds_verify(a, out):
    try:
        D = designs.verify_ds(a.n, a.elements)
    except VerificationFailure as exc:
        raise _failure(exc, n=a.n, elements=a.elements)
    out.write(_dump(dict(D.to_dict(), certified=True)))


def cmd_ds_equiv(a, out):
    D1, D2 = _ds(a.n, a.d1), _ds(a.n, a.d2)
    w = designs.ds_equivalent(D1, D2)
    out.write(_dump({"n": a.n, "d1": list(D1.elements), "d2": list(D2.elements), "equivalent": w is not None,
                     "witness": None if w is None else {"u": w[0], "g": w[1]}, "certified": True}))


def cmd_ds_list(a, out):
    for D in designs.ds_catalog(a.max_n):
        out.write(D.catalog_line() + "\n")


# -- search ---------------------------------------------------------------------------


def cmd_search_pairs(a, out):
    try:
        pairs = search_pairs(a.max_q, prime_q=a.prime_q)
    except ValueError as exc:
        raise UsageError("--max-q", str(exc)) from exc
    if a.format == "json":
        out.write(_dump({"count": len(pairs), "pairs": [p.to_dict() for p in pairs]}))
    elif a.format == "csv":
        out.write("p,q,r,d,both_prime\n")
        for p in pairs:
            out.write(p.row().replace(" ", ",") + "\n")
    else:
        out.write("p q r d both_prime\n")
        for p in pairs:
            out.write(p.row() + "\n")
        out.write(f"count {len(pairs)}\n")


def cmd_search_bh(a, out):
    try:
        ts = bateman_horn_t(a.max_t)
    except ValueError as exc:
        raise UsageError("--max-t", str(exc)) from exc
    out.write(_dump({"count": len(ts), "t": ts, "pairs": [[4 * t + 3, (4 * t + 3) * t + 1] for t in ts]}))


# -- export / replay --------------------------------------------------------------------


def cmd_export(a, out):
    if a.kind == "dsrg":
        _, G = _dsrg_graph(a)
        classes = None
    elif a.kind == "ddg":
        _, _, G = _ddg_graph(a)
        classes = G.classes
    else:
        om = _omega(a.q, a.n)
        G = relation_graph(om, [om.n + a.g % om.n])
        classes = np.arange(om.size) // om.n
    try:
        data = graphio.export_graph(G.adj, a.format, classes if a.format == "adjacency-json" else None)
    except SchemeForgeError as exc:
        raise UsageError("--format", str(exc)) from exc
    _write(a.out, data, out)


def cmd_replay(a, out):
    try:
        with open(a.manifest_file) as fh:
            m = RunManifest.from_json(fh.read())
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError("manifest", str(exc)) from exc
    try:
        check_conventions(m)
    except ConventionMismatch as exc:
        raise UsageError("manifest", str(exc)) from exc
    argv = list(m.command)
    with tempfile.TemporaryDirectory() as tmp:
        out_path = None
        if "--out" in argv:
            k = argv.index("--out") + 1
            out_path = os.path.join(tmp, "out")
            argv[k] = out_path
        buf = io.StringIO()
        code = run(argv, buf)
        outputs = {"stdout": sha256(buf.getvalue().encode())}
        if out_path is not None and os.path.exists(out_path):
            with open(out_path, "rb") as fh:
                outputs["--out"] = sha256(fh.read())
    same = outputs == m.outputs and code == m.exit_code
    payload = {"reproduced": same, "expected": m.outputs, "got": outputs,
               "exit_code": code, "expected_exit_code": m.exit_code, "certified": same}
    if not same:
        raise Failure(dict(payload, error="replay outputs differ"))
    out.write(_dump(payload))


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest to PATH")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (never affects construction)")

    parser = argparse.ArgumentParser(prog="scheme-forge", description="Tatra schemes, DSRGs, DDGs and their certificates.")
    parser.add_argument("--version", action="version", version=VERSION)
    top = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def qn(p, required=True):
        p.add_argument("--q", type=int, required=required, help="field order")
        p.add_argument("--n", type=int, required=required, help="index of K in F*")

    def graph_out(p):
        p.add_argument("--out", help="write the graph to this file ('-' for stdout)")
        p.add_argument("--format", choices=graphio.FORMATS, default="digraph6")

    def dsrg_flags(p, required=True):
        p.add_argument("--p", type=int, required=required)
        p.add_argument("--q", type=int, required=required)
        p.add_argument("--i", type=int, default=1, choices=None)
        p.add_argument("--g", type=int, default=0)

    def input_flags(p):
        p.add_argument("--input", help="graph file instead of a construction")
        p.add_argument("--input-format", choices=graphio.FORMATS)

    s = top.add_parser("scheme").add_subparsers(dest="cmd", required=True)
    p = leaf(s, "build", cmd_scheme_build, "build X0 and print a summary")
    qn(p)
    p.add_argument("--out", help="write the color matrix as JSON")
    p = leaf(s, "verify", cmd_scheme_verify, "verify the scheme axioms and product identities")
    qn(p)
    p.add_argument("--mode", choices=("auto", "full", "sampled"), default="auto")
    p = leaf(s, "fuse", cmd_scheme_fuse, "fuse X0 by an S-ring over D_2n")
    qn(p)
    p.add_argument("--paley", action="store_true")
    p.add_argument("--ds", type=_ints)
    p.add_argument("--multipliers", type=_ints)
    p = leaf(s, "aut", cmd_scheme_aut, "automorphism group order of X0")
    qn(p)

    s = top.add_parser("dsrg").add_subparsers(dest="cmd", required=True)
    p = leaf(s, "build", cmd_dsrg_build, "build Gamma(i, g)")
    dsrg_flags(p)
    p.add_argument("--verify", action="store_true")
    graph_out(p)
    p = leaf(s, "verify", cmd_dsrg_verify, "certify DSRG parameters")
    dsrg_flags(p, required=False)
    input_flags(p)
    p = leaf(s, "iso", cmd_dsrg_iso, "decide isomorphism of Gamma(i1, g1) and Gamma(i2, g2)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    for k in ("1", "2"):
        p.add_argument(f"--i{k}", type=int, default=1)
        p.add_argument(f"--g{k}", type=int, default=0)

    s = top.add_parser("ddg").add_subparsers(dest="cmd", required=True)
    p = leaf(s, "build", cmd_ddg_build, "build Delta(D)")
    qn(p)
    p.add_argument("--ds", type=_ints, required=True)
    p.add_argument("--verify", action="store_true")
    graph_out(p)
    p.set_defaults(format="graph6")
    p = leaf(s, "verify", cmd_ddg_verify, "certify DDG parameters")
    qn(p, required=False)
    p.add_argument("--ds", type=_ints)
    p.add_argument("--class-size", type=int)
    input_flags(p)

    s = top.add_parser("ds").add_subparsers(dest="cmd", required=True)
    p = leaf(s, "make", cmd_ds_make, "construct a difference set")
    p.add_argument("--paley", type=int, metavar="P")
    p.add_argument("--singer", type=int, nargs=2, metavar=("R", "D"))
    p.add_argument("--trivial", choices=("singleton", "complement-singleton", "full"))
    p.add_argument("--n", type=int)
    p.add_argument("--complement", action="store_true")
    p = leaf(s, "verify", cmd_ds_verify, "certify a difference set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--elements", type=_ints, required=True)
    p = leaf(s, "equiv", cmd_ds_equiv, "test equivalence under units and shifts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d1", type=_ints, required=True)
    p.add_argument("--d2", type=_ints, required=True)
    p = leaf(s, "list", cmd_ds_list, "catalog of difference sets")
    p.add_argument("--max-n", type=int, default=31)

    s = top.add_parser("drg").add_subparsers(dest="cmd", required=True)
    p = leaf(s, "check", cmd_drg_check, "certify distance regularity of (Omega, s_g)")
    qn(p, required=False)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--diameter", type=int)
    input_flags(p)

    s = top.add_parser("search").add_subparsers(dest="cmd", required=True)
    p = leaf(s, "pairs", cmd_search_pairs, "admissible (p, q) pairs")
    p.add_argument("--max-q", type=int, required=True)
    p.add_argument("--prime-q", action="store_true")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p = leaf(s, "bh", cmd_search_bh, "t with 4t+3 and (4t+3)t+1 prime")
    p.add_argument("--max-t", type=int, required=True)

    p = top.add_parser("export", parents=[common], help="write a built graph in a standard format")
    p.set_defaults(fn=cmd_export)
    p.add_argument("--kind", choices=("dsrg", "ddg", "drg"), required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--g", type=int, default=0)
    p.add_argument("--ds", type=_ints)
    p.add_argument("--format", choices=graphio.FORMATS, required=True)
    p.add_argument("--out")

    p = top.add_parser("replay", parents=[common], help="re-run a manifest and compare outputs")
    p.set_defaults(fn=cmd_replay)
    p.add_argument("manifest_file")
    return parser


def _params(a) -> dict:
    skip = {"fn", "manifest", "group", "cmd"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip}


def _strip_manifest(argv: list[str]) -> list[str]:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok == "--manifest":
            skip = True
            continue
        if tok.startswith("--manifest="):
            continue
        out.append(tok)
    return out


def run(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        if a.fn is cmd_export and a.kind == "dsrg" and (a.p is None or a.q is None):
            raise UsageError("--p", "export --kind dsrg needs --p and --q")
        a.fn(a, buf)
        code = 0
    except UsageError as exc:
        print(f"scheme-forge: error: {exc}", file=sys.stderr)
        return 2
    except Failure as exc:
        buf.write(_dump(exc.payload))
        code = 1
    except TooLarge as exc:
        print(f"scheme-forge: error: {exc}", file=sys.stderr)
        return 2
    text = buf.getvalue()
    out.write(text)
    if a.manifest:
        outputs = {"stdout": sha256(text.encode())}
        if getattr(a, "out", None) and a.out != "-" and os.path.exists(a.out):
            with open(a.out, "rb") as fh:
                outputs["--out"] = sha256(fh.read())
        m = make_manifest(_strip_manifest(argv), _params(a), outputs, code)
        with open(a.manifest, "w") as fh:
            fh.write(m.to_json())
    return code


def main() -> None:
    sys.exit(run())
