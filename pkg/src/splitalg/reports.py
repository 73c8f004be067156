"""Report assembly behind the command-line interface.

Every function returns a plain dict following the report schema::

    {"algebra": name,
     "witnesses": {class: {"status": "found|absent|unknown",
                           "terms": [str], "tables": [[int]]}},
     "certificates": [{"name": str, "pass": bool, "counterexample": [int] | None}]}

plus command-specific extra keys.  Dicts are built in a fixed order so a
JSON dump is byte-for-byte reproducible.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import identities as ids
from . import translations as tr
from .algebra import FiniteAlgebra, builtin, identity_hom, load_algebra, product
from .clone import (DEFAULT_CAP, CloneCache, find_biternary, find_maltsev,
                    find_protomodular, find_rho_sigma, find_right_loop, find_subtraction,
                    find_unital)
from .split import (check_naturality, enumerate_split_epis, phi_general, phi_pointed,
                    pointed_decomposition, split_extension, splext_morphisms)
from .terms import Signature, format_term, parse_signature, parse_term

__all__ = [
    "resolve_algebra", "classify", "decompose", "translate", "verify_naturality",
    "to_json", "to_text",
]


def resolve_algebra(ref: str) -> FiniteAlgebra:
    """A JSON file path, or ``builtin:FAMILY:N[:pointed]``."""
    if ref.startswith("builtin:"):
        parts = ref.split(":")
        if len(parts) < 3:
            raise ValueError(f"cannot read builtin reference {ref!r}")
        options = {opt: True for opt in parts[3:]}
        return builtin(parts[1], int(parts[2]), **options)
    return load_algebra(ref)


def _witness_entry(result, A) -> dict:
    entry = {"status": result.status, "terms": [], "tables": []}
    if result.witness is not None:
        entry["terms"] = result.witness.terms()
        entry["tables"] = result.witness.tables(A)
    return entry


def _identity_certs(kind: str, A, identities) -> list[dict]:
    return [{"name": f"{kind}:{d['name']}", "pass": d["pass"],
             "counterexample": d["counterexample"]} for d in tr.verify(A, identities)]


def classify(A: FiniteAlgebra, cap: int = DEFAULT_CAP, proto_n=(1,),
             require_bijective: bool = False) -> dict:
    cache = CloneCache(A, cap)
    searches = [("maltsev", lambda: find_maltsev(A, clones=cache)),
                ("biternary", lambda: find_biternary(A, clones=cache))]
    if A.sig.pointed:
        searches += [
            ("right_loop", lambda: find_right_loop(A, clones=cache)),
            ("unital", lambda: find_unital(A, clones=cache)),
            ("subtraction", lambda: find_subtraction(A, clones=cache)),
            ("rho_sigma", lambda: find_rho_sigma(A, clones=cache)),
        ]
        for n in proto_n:
            searches.append((f"protomodular_{n}",
                             lambda n=n: find_protomodular(A, n, bijective=require_bijective,
                                                           clones=cache)))
    witnesses = {}
    certificates = []
    for kind, run in searches:
        result = run()
        witnesses[kind] = _witness_entry(result, A)
        if result.witness is not None:
            certificates += _identity_certs(kind, A, result.witness.identities())
    return {
        "algebra": A.name,
        "size": A.size,
        "signature": str(A.sig),
        "witnesses": witnesses,
        "clones": {str(k): v for k, v in cache.summary().items()},
        "certificates": certificates,
    }


def decompose(A: FiniteAlgebra, B: FiniteAlgebra, cap: int = DEFAULT_CAP,
              plus: str | None = None, minus: str | None = None,
              p: str | None = None, q: str | None = None, limit: int | None = None) -> dict:
    """Split epis A -> B with phi/psi tables and certificates.

    Witness terms come from the flags when given, otherwise from a clone
    search on A (B is a retract of A, so it lies in the variety A generates).
    """
    if not A.same_signature(B):
        raise ValueError(f"signature mismatch: {A.name} vs {B.name}")
    sig = A.sig
    cache = CloneCache(A, cap)
    witnesses = {}
    loop = None
    if sig.pointed:
        if plus and minus:
            loop = (parse_term(plus, sig), parse_term(minus, sig))
            witnesses["right_loop"] = {"status": "supplied", "terms": [plus, minus], "tables": []}
        else:
            res = find_right_loop(A, clones=cache)
            witnesses["right_loop"] = _witness_entry(res, A)
            if res.witness is not None:
                loop = (res.witness.plus, res.witness.minus)
    pq = None
    if p and q:
        pq = (parse_term(p, sig), parse_term(q, sig))
        witnesses["biternary"] = {"status": "supplied", "terms": [p, q], "tables": []}
    else:
        res = find_biternary(A, clones=cache)
        witnesses["biternary"] = _witness_entry(res, A)
        if res.witness is not None:
            pq = (res.witness.p, res.witness.q)

    entries = []
    certificates = []
    for i, s in enumerate(enumerate_split_epis(A, B, limit)):
        entry = {"alpha": list(s.alpha.map), "beta": list(s.beta.map)}
        tag = f"split_epi[{i}]"
        if sig.pointed:
            ext = split_extension(s)
            entry["kernel"] = list(ext.K.elements)
            card = {"name": f"{tag}:|A|=|K||B|",
                    "pass": A.size == len(ext.K) * B.size,
                    "counterexample": None if A.size == len(ext.K) * B.size
                    else [A.size, len(ext.K), B.size]}
            certificates.append(card)
            if loop is not None:
                phi = phi_pointed(ext, loop[0])
                entry["phi"] = [[k, b, v] for (k, b), v in zip(phi.dom_labels, phi.values)]
                cert = pointed_decomposition(ext, *loop)
                certificates += [{**c, "name": f"{tag}:{c['name']}"} for c in cert.to_list()]
        if pq is not None:
            _, _, cert = phi_general(s, identity_hom(B), *pq)
            certificates += [{**c, "name": f"{tag}:{c['name']}"} for c in cert.to_list()]
        entries.append(entry)
    return {
        "algebra": f"{A.name} over {B.name}",
        "witnesses": witnesses,
        "split_epis": entries,
        "certificates": certificates,
    }


TRANSLATIONS = (
    "tilde_from_pq", "u_from_tilde", "pq_from_u", "loop_from_tilde", "pq_from_loop",
    "loop_from_rho_sigma", "protomodular_from_rho_sigma", "gamma_tau",
)


def translate(spec: dict, base_dir: Path | None = None) -> dict:
    """Run one named translation from a spec document.

    Spec keys: ``translation``, ``inputs`` (term strings; ``sigma``/``theta``
    are lists), optional ``algebra`` (file path or builtin reference),
    ``signature`` (text; defaults to the algebra's), ``constant``, ``m``,
    ``strict`` (default true).
    """
    name = spec["translation"]
    if name not in TRANSLATIONS:
        raise ValueError(f"unknown translation {name!r}")
    A = None
    if "algebra" in spec:
        ref = spec["algebra"]
        if base_dir is not None and not ref.startswith("builtin:") and not Path(ref).is_absolute():
            ref = str(base_dir / ref)
        A = resolve_algebra(ref)
    if "signature" in spec:
        sig = parse_signature(spec["signature"])
    elif A is not None:
        sig = A.sig
    else:
        raise ValueError("translation spec needs a signature or an algebra")
    strict = spec.get("strict", True)
    inputs = spec["inputs"]

    def term(key):
        return parse_term(inputs[key], sig)

    def terms(key):
        return [parse_term(t, sig) for t in inputs[key]]

    const = spec.get("constant") or (sig.default_constant() if sig.pointed else None)
    m = int(spec.get("m", 0))
    source, target = [], []
    if name == "tilde_from_pq":
        p, q = term("p"), term("q")
        outputs = dict(zip(("p_tilde", "q_tilde"), tr.tilde_from_pq(p, q, strict)))
        source, target = ids.biternary(p, q), ids.tilde_condition(*outputs.values())
    elif name == "u_from_tilde":
        pt, qt = term("p_tilde"), term("q_tilde")
        outputs = {"u_tilde": tr.u_from_tilde(pt, qt, strict)}
        source, target = ids.tilde_condition(pt, qt), ids.quaternary_tilde_condition(
            outputs["u_tilde"])
    elif name == "pq_from_u":
        u = term("u")
        outputs = dict(zip(("p", "q"), tr.pq_from_u(u, strict)))
        source, target = ids.quaternary_condition(u), ids.biternary(*outputs.values())
    elif name == "loop_from_tilde":
        pt, qt = term("p_tilde"), term("q_tilde")
        outputs = dict(zip(("plus", "minus"), tr.loop_from_tilde(pt, qt, const, sig, strict)))
        source, target = ids.tilde_condition(pt, qt), ids.right_loop(*outputs.values(), const)
    elif name == "pq_from_loop":
        plus, minus = term("plus"), term("minus")
        outputs = dict(zip(("p", "q"), tr.pq_from_loop(plus, minus, strict)))
        source = ids.right_loop(plus, minus, const) if const else []
        target = ids.biternary(*outputs.values())
    elif name == "loop_from_rho_sigma":
        rho, sigma = term("rho"), term("sigma")
        outputs = dict(zip(("plus", "minus"),
                           tr.loop_from_rho_sigma(rho, sigma, sig, const, strict)))
        source = ids.rho_sigma(rho, sigma, const)[:3]
        target = ids.right_loop(*outputs.values(), const)
    elif name == "protomodular_from_rho_sigma":
        rho, sigmas, thetas = term("rho"), terms("sigma"), terms("theta")
        e_list, s_list, p = tr.protomodular_from_rho_sigma(rho, sigmas, thetas, const, sig,
                                                           m, strict)
        outputs = {**{f"e{i + 1}": e for i, e in enumerate(e_list)},
                   **{f"s{i + 1}": s for i, s in enumerate(s_list)}, "p": p}
        forms = ids.generalized(rho, sigmas, thetas, m)
        source = forms["subtraction"] + forms["protomodular"]
        target = ids.protomodular(e_list, s_list, p)
    else:  # gamma_tau
        rho, sigmas, thetas = term("rho"), terms("sigma"), terms("theta")
        outputs = {}
        target = ids.gamma_tau(rho, sigmas, thetas, m)

    report = {
        "algebra": A.name if A is not None else None,
        "translation": name,
        "outputs": {k: format_term(v) for k, v in outputs.items()},
        "witnesses": {},
        "certificates": [],
    }
    if A is not None:
        report["certificates"] = (_identity_certs("source", A, source)
                                  + _identity_certs("target", A, target))
        report["source_holds"] = all(c["pass"] for c in report["certificates"]
                                     if c["name"].startswith("source:"))
    return report


PRODUCT_SEARCH_LIMIT = 64


def _global_loop(members: list[FiniteAlgebra], cap: int):
    """A right-loop pair valid on every member, or None.

    Tries each member's own witness first; failing that, searches the
    product of all members (small products only), whose witnesses hold
    throughout the variety it generates.
    """
    candidates = list(members)
    total = 1
    for A in members:
        total *= A.size
    if len(members) > 1 and total <= PRODUCT_SEARCH_LIMIT:
        P = members[0]
        for A in members[1:]:
            P = product(P, A)[0]
        candidates.append(P)
    for A in candidates:
        res = find_right_loop(A, cap=cap)
        if res.witness is None:
            continue
        if all(ids.all_hold(X, res.witness.identities()) for X in members):
            return res.witness.plus, res.witness.minus
    return None


def verify_naturality(algebras: list[FiniteAlgebra], limit_homs: int | None = None,
                      cap: int = DEFAULT_CAP, plus: str | None = None,
                      minus: str | None = None) -> dict:
    """check_naturality over every morphism between every pair of corpus extensions.

    The components come from one right-loop witness shared by the whole
    signature group: the supplied terms, or see :func:`_global_loop`.
    """
    pointed = [A for A in algebras if A.sig.pointed]
    sigs: list[Signature] = []
    for A in pointed:
        if A.sig not in sigs:
            sigs.append(A.sig)
    groups = []
    certificates = []
    for sig in sigs:
        members = [A for A in pointed if A.sig == sig]
        loop = None
        if plus and minus:
            loop = (parse_term(plus, sig), parse_term(minus, sig))
        else:
            loop = _global_loop(members, cap)
        group = {"signature": str(sig), "algebras": [A.name for A in members],
                 "witness": [format_term(t) for t in loop] if loop else None,
                 "extensions": 0, "morphisms": 0, "passed": 0, "failures": []}
        groups.append(group)
        if loop is None:
            continue
        exts = [split_extension(s) for A in members for B in members
                for s in enumerate_split_epis(A, B, limit_homs)]
        group["extensions"] = len(exts)

        def builder(ext, plus_term=loop[0]):
            return phi_pointed(ext, plus_term)

        for i, e1 in enumerate(exts):
            for j, e2 in enumerate(exts):
                for mor in splext_morphisms(e1, e2, limit_homs):
                    cert = check_naturality(e1, e2, mor, builder)
                    group["morphisms"] += 1
                    if cert.passed:
                        group["passed"] += 1
                    else:
                        bad = [c.to_dict() for c in cert.checks if not c.passed]
                        group["failures"].append({"from": i, "to": j, "checks": bad})
        certificates.append({"name": f"naturality[{sig}]",
                             "pass": group["passed"] == group["morphisms"],
                             "counterexample": None if group["passed"] == group["morphisms"]
                             else [group["morphisms"] - group["passed"]]})
    return {"algebra": "corpus", "groups": groups, "witnesses": {},
            "certificates": certificates}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def to_text(report: dict) -> str:
    lines = [f"algebra {report.get('algebra')}"]
    for kind, w in report.get("witnesses", {}).items():
        terms = " ; ".join(w.get("terms", []))
        lines.append(f"witness {kind} {w['status']}" + (f" {terms}" if terms else ""))
    for key, value in report.items():
        if key in ("algebra", "witnesses", "certificates"):
            continue
        lines.append(f"{key} {json.dumps(value, separators=(',', ':'))}")
    for c in report.get("certificates", []):
        status = "PASS" if c["pass"] else "FAIL"
        ce = "" if c["counterexample"] is None else f" counterexample={c['counterexample']}"
        lines.append(f"certificate {c['name']} {status}{ce}")
    return "\n".join(lines) + "\n"
