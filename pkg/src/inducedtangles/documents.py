"""JSON instance and certificate documents.

Documents are UTF-8 JSON with sorted keys.  Sets are sorted index arrays,
rationals are ``"p/q"`` strings, and floats are rejected on both read and
write, so serialization is byte-stable and exact.

An instance digest is the SHA-256 of the canonical serialization of the
instance without its provenance; certificates name the digest of the
instance they certify.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .core import (GroundSet, OrderSpec, OrientedSeparation, Separation,
                   SeparationSystem, members, to_mask)
from .errors import InputError
from .exactlp import Infeasible, format_rational, parse_rational, verify_certificate
from .inducers import (Induced, NotInduced, WeightFunction, build_matrix,
                       induces, set_induces)
from .orientations import Orientation, maximal_elements
from .resilience import LocalWitnessSet, check_local_witness, local_subsets

INSTANCE_FORMAT = "inducedtangles/instance"
CERTIFICATE_FORMAT = "inducedtangles/certificate"
VERSION = 1
CERTIFICATE_KINDS = ("inducer", "farkas-witness", "inducing-set", "local-witness-set")


def dumps(doc: dict) -> str:
    _reject_floats(doc)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=_float_refused)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    return doc


def _float_refused(text: str):
    raise InputError(f"floating-point number {text} in document; use \"p/q\" strings")


def _reject_floats(obj: Any) -> None:
    if isinstance(obj, float):
        raise InputError("refusing to serialize a float")
    if isinstance(obj, dict):
        for v in obj.values():
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)


def _plain(value):
    """Provenance parameters as JSON values (Fractions become "p/q")."""
    if isinstance(value, bool) or isinstance(value, (int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    raise InputError(f"cannot serialize provenance value {value!r}")


# --- instances ---------------------------------------------------------------

def _order_doc(system: SeparationSystem) -> dict:
    spec = system.order
    if spec.kind == "standard":
        return {"kind": "standard"}
    if spec.kind == "crossing":
        return {"kind": "crossing", "families": [list(members(f)) for f in spec.families]}
    return {"kind": "explicit", "values": [spec.table[s] for s in system.separations]}


def instance_document(system: SeparationSystem, orientation: Orientation | None = None,
                      provenance: dict | None = None) -> dict:
    ground: dict = {"size": system.n}
    if system.ground.labels is not None:
        ground["labels"] = list(system.ground.labels)
    doc = {
        "format": INSTANCE_FORMAT,
        "version": VERSION,
        "ground": ground,
        "separations": [[list(members(a)), list(members(b))]
                        for a, b in (s.sides for s in system.separations)],
        "order": _order_doc(system),
    }
    if orientation is not None:
        if orientation.system != system:
            raise InputError("orientation belongs to a different system")
        doc["orientation"] = [{"index": i, "direction": "forward" if c else "reverse"}
                              for i, c in enumerate(orientation.choice)]
    if provenance is not None:
        doc["provenance"] = _plain(provenance)
    return doc


def _index_list(value, n: int, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(i, int) and not isinstance(i, bool)
                                              for i in value):
        raise InputError(f"{what} must be an array of integers")
    if any(not 0 <= i < n for i in value):
        raise InputError(f"{what} has an index outside 0..{n - 1}")
    if value != sorted(set(value)):
        raise InputError(f"{what} must be sorted without repeats")
    return value


def parse_instance(doc: dict) -> tuple[SeparationSystem, Orientation | None, dict | None]:
    """Inverse of :func:`instance_document`; validates every field."""
    if doc.get("format") != INSTANCE_FORMAT:
        raise InputError(f"not an instance document (format={doc.get('format')!r})")
    if doc.get("version") != VERSION:
        raise InputError(f"unsupported version {doc.get('version')!r}")
    ground = doc.get("ground")
    if not isinstance(ground, dict) or not isinstance(ground.get("size"), int):
        raise InputError("ground.size must be an integer")
    n = ground["size"]
    labels = ground.get("labels")
    if labels is not None and (not isinstance(labels, list)
                               or not all(isinstance(x, str) for x in labels)):
        raise InputError("ground.labels must be an array of strings")
    gs = GroundSet(n, tuple(labels) if labels is not None else None)
    raw = doc.get("separations")
    if not isinstance(raw, list):
        raise InputError("separations must be an array")
    seps, listed = [], []
    for j, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"separation {j} must be a pair of index arrays")
        a = to_mask(_index_list(pair[0], n, f"separation {j} side A"))
        b = to_mask(_index_list(pair[1], n, f"separation {j} side B"))
        if a | b != gs.full:
            raise InputError(f"separation {j}: sides do not cover the ground set")
        seps.append(Separation.of(a, b, n))
        listed.append((a, b))
    if len(set(seps)) != len(seps):
        raise InputError("duplicate separation in document")
    order = _parse_order(doc.get("order"), seps, n)
    system = SeparationSystem(gs, seps, order)
    orientation = None
    if "orientation" in doc:
        orientation = _parse_orientation(doc["orientation"], listed, system)
    provenance = doc.get("provenance")
    if provenance is not None and not isinstance(provenance, dict):
        raise InputError("provenance must be an object")
    return system, orientation, provenance


def _parse_order(spec, seps: list[Separation], n: int) -> OrderSpec:
    if spec is None:
        return OrderSpec.standard()
    if not isinstance(spec, dict):
        raise InputError("order must be an object")
    kind = spec.get("kind")
    if kind == "standard":
        return OrderSpec.standard()
    if kind == "crossing":
        fams = spec.get("families")
        if not isinstance(fams, list):
            raise InputError("crossing order needs a families array")
        return OrderSpec.crossing([to_mask(_index_list(f, n, "family")) for f in fams])
    if kind == "explicit":
        values = spec.get("values")
        if not isinstance(values, list) or len(values) != len(seps) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in values):
            raise InputError("explicit order needs one integer per separation")
        return OrderSpec.explicit(dict(zip(seps, values)))
    raise InputError(f"unknown order kind {kind!r}")


def _parse_orientation(entries, listed: list[tuple[int, int]],
                       system: SeparationSystem) -> Orientation:
    """Directions refer to the sides in the order the document lists them."""
    if not isinstance(entries, list):
        raise InputError("orientation must be an array")
    choice: dict[int, bool] = {}
    for entry in entries:
        if not isinstance(entry, dict):
            raise InputError("orientation entries must be objects")
        i, d = entry.get("index"), entry.get("direction")
        if not isinstance(i, int) or not 0 <= i < len(listed):
            raise InputError(f"orientation index {i!r} out of range")
        if d not in ("forward", "reverse"):
            raise InputError(f"orientation direction {d!r} must be forward or reverse")
        if i in choice:
            raise InputError(f"separation {i} oriented twice")
        choice[i] = d == "forward"
    if len(choice) != len(listed):
        raise InputError("orientation must cover exactly the listed separations")
    n = system.n
    elements = [OrientedSeparation(a, b, n) if choice[i] else OrientedSeparation(b, a, n)
                for i, (a, b) in enumerate(listed)]
    return Orientation.from_elements(system, elements)


def digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "provenance"}
    return "sha256:" + hashlib.sha256(dumps(body).encode("utf-8")).hexdigest()


def instance_digest(system: SeparationSystem, orientation: Orientation | None) -> str:
    return digest(instance_document(system, orientation))


# --- certificates ------------------------------------------------------------

def _rationals(values) -> list[str]:
    return [format_rational(Fraction(v)) for v in values]


def _parse_rationals(values, what: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise InputError(f"{what} must be an array of \"p/q\" strings")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise InputError(f"{what}: {v!r} is not an exact rational")
        out.append(parse_rational(v))
    return tuple(out)


def certificate_document(kind: str, tau: Orientation, **body) -> dict:
    if kind not in CERTIFICATE_KINDS:
        raise InputError(f"unknown certificate kind {kind!r}")
    doc = {"format": CERTIFICATE_FORMAT, "version": VERSION, "kind": kind,
           "instance": instance_digest(tau.system, tau)}
    doc.update(body)
    return doc


def outcome_certificate(outcome, tau: Orientation) -> dict:
    """Certificate for a decide_induced outcome."""
    if isinstance(outcome, Induced):
        return certificate_document("inducer", tau, weights=_rationals(outcome.weights.values))
    if isinstance(outcome, NotInduced):
        columns = [tau.system.index(e) for e in outcome.columns]
        return certificate_document("farkas-witness", tau, columns=columns,
                                    weights=_rationals(outcome.witness.values))
    raise InputError(f"not a decision outcome: {outcome!r}")


def set_certificate(x: int, tau: Orientation) -> dict:
    return certificate_document("inducing-set", tau, set=list(members(x)))


def local_certificate(ws: LocalWitnessSet, tau: Orientation) -> dict:
    maximal = [tau.system.index(e) for e in ws.maximal]
    witnesses = [{"subset": [maximal[j] for j in subset], "weights": _rationals(w.values)}
                 for subset, w in ws.witnesses.items()]
    return certificate_document("local-witness-set", tau, k=ws.k,
                                ell=format_rational(ws.ell), maximal=maximal,
                                witnesses=witnesses)


def verify_certificate_document(cert: dict, system: SeparationSystem,
                                tau: Orientation | None) -> tuple[bool, str]:
    """Re-verify ``cert`` against the instance; returns (ok, reason)."""
    if cert.get("format") != CERTIFICATE_FORMAT:
        raise InputError("not a certificate document")
    if tau is None:
        raise InputError("certificates refer to an oriented instance")
    if cert.get("instance") != instance_digest(system, tau):
        return False, "certificate digest does not match the instance"
    kind = cert.get("kind")
    n = system.n
    if kind == "inducer":
        w = WeightFunction(_parse_rationals(cert.get("weights"), "weights"))
        if len(w) != n:
            return False, f"inducer has {len(w)} weights for {n} elements"
        return (True, "inducer induces the orientation") if induces(w, tau) else (
            False, "weight function does not induce the orientation")
    if kind == "inducing-set":
        x = to_mask(_index_list(cert.get("set"), n, "set"))
        return (True, "set induces the orientation") if set_induces(x, tau.elements) else (
            False, "set does not induce the orientation")
    if kind == "farkas-witness":
        cols = cert.get("columns")
        if not isinstance(cols, list) or not all(isinstance(i, int) and 0 <= i < len(system)
                                                 for i in cols):
            raise InputError("columns must be separation indices")
        y = _parse_rationals(cert.get("weights"), "weights")
        if len(y) != len(cols):
            return False, "witness length differs from column count"
        columns = [tau.elements[i] for i in cols]
        Q = build_matrix(columns, n)
        ok = verify_certificate(Q, [1] * len(columns), Infeasible(y))
        return (True, "Farkas witness certifies that no weight function induces") if ok else (
            False, "Farkas witness fails Q y <= 0, y >= 0, sum y > 0")
    if kind == "local-witness-set":
        return _verify_local(cert, tau)
    return False, f"unknown certificate kind {kind!r}"


def _verify_local(cert: dict, tau: Orientation) -> tuple[bool, str]:
    k = cert.get("k")
    if not isinstance(k, int) or k < 1:
        raise InputError("k must be a positive integer")
    ell = parse_rational(cert.get("ell"))
    mu = maximal_elements(tau)
    expected = [tau.system.index(e) for e in mu]
    if cert.get("maximal") != expected:
        return False, "maximal elements do not match the instance"
    pos = {idx: j for j, idx in enumerate(expected)}
    entries = cert.get("witnesses")
    if not isinstance(entries, list):
        raise InputError("witnesses must be an array")
    seen = set()
    for entry in entries:
        subset = tuple(pos.get(i, -1) for i in entry.get("subset", []))
        if -1 in subset:
            return False, "witness subset names a non-maximal separation"
        w = WeightFunction(_parse_rationals(entry.get("weights"), "weights"))
        if len(w) != tau.n or not check_local_witness(w, subset, tau, ell):
            return False, f"local witness for subset {list(subset)} fails its conditions"
        seen.add(subset)
    needed = set(local_subsets(len(mu), k))
    if seen != needed:
        return False, "witness set does not cover every k-subset of maximal elements"
    return True, f"every {k}-subset of maximal elements has a local witness"
