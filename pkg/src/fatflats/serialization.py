"""JSON encodings of every externally visible type.

Scalars are encoded as ints or "num/den" strings; exponent tuples as
comma-joined strings.  Every encoder round-trips through its decoder.
"""

import json

from .bounds import BoundReport, LowerBound
from .classify import Classification
from .divisors import ComponentClass, DivisorClass, NefCertificate
from .errors import ValidationError
from .interpolation import AlphaRecord, Form
from .projective import LinForm, Subspace
from .scalars import encode_scalar, parse_scalar
from .schemes import FatComponent, FatFlatScheme, FatPointsP2

_KINDS = {"E": "E", "line": "line", "conic": "conic"}


# -- schemes -------------------------------------------------------------------

def scheme_to_dict(scheme: FatFlatScheme) -> dict:
    out = {
        "ambient_dim": scheme.ambient_dim,
        "components": [
            {"forms": [[encode_scalar(c) for c in f.coeffs]
                       for f in comp.subspace.forms],
             "multiplicity": comp.multiplicity,
             "label": comp.label}
            for comp in scheme.components],
    }
    if scheme.star_core is not None:
        e, s, m = scheme.star_core
        out["star_core"] = {"e": e, "s": s, "m": m}
    if scheme.predicted_alpha_multiple is not None:
        out["predicted_alpha_multiple"] = scheme.predicted_alpha_multiple
    return out


def scheme_from_dict(data: dict) -> FatFlatScheme:
    try:
        n = int(data["ambient_dim"])
        comps = []
        for entry in data["components"]:
            forms = [LinForm([parse_scalar(c) for c in row])
                     for row in entry["forms"]]
            comps.append(FatComponent(Subspace(n, forms),
                                      int(entry["multiplicity"]),
                                      entry.get("label", "")))
        core = data.get("star_core")
        star_core = (core["e"], core["s"], core["m"]) if core else None
        return FatFlatScheme(n, tuple(comps), star_core=star_core,
                             predicted_alpha_multiple=data.get(
                                 "predicted_alpha_multiple"))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed scheme JSON: {exc}") from exc


def points_to_dict(config: FatPointsP2) -> dict:
    return {
        "points": [[encode_scalar(x) for x in p] for p in config.points],
        "multiplicities": list(config.multiplicities),
    }


def points_from_dict(data: dict) -> FatPointsP2:
    try:
        pts = [[parse_scalar(x) for x in p] for p in data["points"]]
        return FatPointsP2(pts, [int(m) for m in data["multiplicities"]])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed points JSON: {exc}") from exc


def load_any_scheme(data: dict):
    """Scheme or points file, by shape."""
    if "components" in data:
        return scheme_from_dict(data)
    if "points" in data:
        return points_from_dict(data)
    raise ValidationError("file is neither a scheme nor a points configuration")


# -- forms ---------------------------------------------------------------------

def form_to_dict(form: Form) -> dict:
    if form.field != "rational":
        raise ValidationError("only rational forms are serialized")
    return {
        "ambient_dim": form.ambient_dim,
        "degree": form.degree,
        "coeffs": {",".join(map(str, exps)): encode_scalar(c)
                   for exps, c in form.coeffs},
    }


def form_from_dict(data: dict) -> Form:
    try:
        n = int(data["ambient_dim"])
        d = int(data["degree"])
        coeffs = {tuple(int(x) for x in key.split(",")): parse_scalar(val)
                  for key, val in data["coeffs"].items()}
        return Form.from_dict(n, d, coeffs)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed form JSON: {exc}") from exc


# -- certificates --------------------------------------------------------------

def certificate_to_dict(cert: NefCertificate) -> dict:
    return {
        "t": cert.divisor.t,
        "drops": list(cert.divisor.drops),
        "decomposition": [
            {"kind": comp.kind, "points": list(comp.points), "coeff": coeff}
            for comp, coeff in cert.decomposition],
    }


def certificate_from_dict(data: dict) -> NefCertificate:
    try:
        divisor = DivisorClass(int(data["t"]), [int(x) for x in data["drops"]])
        decomposition = tuple(
            (ComponentClass(_KINDS[entry["kind"]], entry["points"]),
             int(entry["coeff"]))
            for entry in data["decomposition"])
        return NefCertificate(divisor=divisor, decomposition=decomposition)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed certificate JSON: {exc}") from exc


# -- reports -------------------------------------------------------------------

def alpha_record_to_dict(record: AlphaRecord) -> dict:
    out = {
        "k": record.k,
        "alpha": record.alpha,
        "field_mode": record.field_mode,
        "degree_cap": record.degree_cap,
        "degree_cap_hit": record.degree_cap_hit,
        "escalated": record.escalated,
    }
    if record.primes:
        out["primes"] = list(record.primes)
    if record.witness is not None and record.witness.field == "rational":
        out["witness"] = form_to_dict(record.witness)
    return out


def lower_bound_to_dict(lb: LowerBound) -> dict:
    return {"value": encode_scalar(lb.value), "certificate": lb.kind,
            "detail": lb.detail}


def report_to_dict(report: BoundReport) -> dict:
    return {
        "label": report.label,
        "table": [alpha_record_to_dict(r) for r in report.table],
        "upper": None if report.upper is None else
            {"value": encode_scalar(report.upper), "k": report.upper_k},
        "lower": None if report.lower is None else
            lower_bound_to_dict(report.lower),
        "verdict": report.verdict,
    }


def classification_to_dict(c: Classification) -> dict:
    out = {
        "case": c.case,
        "alpha_hat": None if c.alpha_hat is None else encode_scalar(c.alpha_hat),
        "reason": c.reason,
        "detail": c.detail,
    }
    if c.lower is not None:
        out["lower"] = lower_bound_to_dict(c.lower)
    if c.certificate is not None:
        out["certificate"] = certificate_to_dict(c.certificate)
    if c.subscheme_indices is not None:
        out["subscheme_indices"] = list(c.subscheme_indices)
    return out


def dump_json(data: dict, path=None) -> str:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
