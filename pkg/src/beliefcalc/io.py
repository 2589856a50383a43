"""JSON model and price documents.

A model document looks like::

    {
      "name": "coin",
      "frame": ["h", "t"],
      "masses": [
        {"set": ["h"], "mass": "2/5"},
        {"set": ["t"], "mass": "2/5"},
        {"set": ["h", "t"], "mass": "1/5"}
      ],
      "random_variables": {
        "X": {"h": "1", "t": "0"}
      }
    }

A product frame is written ``"frame": {"left": [...], "right": [...]}`` and
its members either as pair labels ``"(a,b)"`` or as ``["a", "b"]`` lists.
Scalars are ``"p/q"`` strings or terminating decimals; JSON numbers are read
through their decimal text, so ``0.1`` means exactly 1/10.

A price document replaces ``masses`` by ``prices`` (entries ``{"set", "price"}``);
unlisted sets are priced 0.

:func:`save_model` writes a canonical form: entries sorted by mask, members
in frame order, scalars in lowest terms.  Loading and saving a canonical
document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal

from .errors import BeliefError, FrameError, MassError, ParseError, UnknownLabel
from .expectation import RandomVariable
from .frame import Frame, build_frame
from .mass import MassFunction, SetFunction
from .numeric import RATIONAL, check_mode, format_scalar, parse_scalar, to_scalar
from .products import ProductFrame, pair_label

METADATA_KEYS = ("name", "description", "section")


@dataclass
class Model:
    frame: Frame
    mass: MassFunction
    random_variables: dict[str, RandomVariable] = field(default_factory=dict)
    metadata: dict[str, str] = field(default_factory=dict)


@dataclass
class PriceModel:
    frame: Frame
    prices: SetFunction
    metadata: dict[str, str] = field(default_factory=dict)


def _parse_json(text: str) -> dict:
    try:
        doc = json.loads(text, parse_float=Decimal, parse_int=int)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, locus=f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", locus="document")
    return doc


def _scalar(value, numeric: str, locus: str):
    if isinstance(value, bool) or not isinstance(value, (str, int, Decimal)):
        raise ParseError(f"expected a number or a 'p/q' string, got {value!r}", locus=locus)
    try:
        exact = parse_scalar(value) if isinstance(value, str) else to_scalar(value, RATIONAL)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), locus=locus) from None
    return to_scalar(exact, numeric)


def _frame(doc: dict) -> Frame:
    if "frame" not in doc:
        raise ParseError("missing 'frame'", locus="frame")
    layout = doc["frame"]
    try:
        if isinstance(layout, dict):
            missing = {"left", "right"} - set(layout)
            if missing:
                raise ParseError(f"product frame needs {sorted(missing)}", locus="frame")
            return ProductFrame.of(_labels_frame(layout["left"], "frame.left"), _labels_frame(layout["right"], "frame.right"))
        return _labels_frame(layout, "frame")
    except FrameError as exc:
        exc.locus = exc.locus or "frame"
        raise


def _labels_frame(labels, locus: str) -> Frame:
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError("frame must be a list of string labels", locus=locus)
    return build_frame(labels)


def _member(frame: Frame, item, locus: str) -> int:
    if isinstance(frame, ProductFrame) and isinstance(item, list):
        if len(item) != 2 or not all(isinstance(x, str) for x in item):
            raise ParseError(f"pair members are [left, right] label lists, got {item!r}", locus=locus)
        item = pair_label(*item)
    if not isinstance(item, str):
        raise ParseError(f"set members must be labels, got {item!r}", locus=locus)
    try:
        return frame.index(item)
    except UnknownLabel as exc:
        exc.locus = locus
        raise


def _set_bits(frame: Frame, members, locus: str) -> int:
    if not isinstance(members, list):
        raise ParseError("'set' must be a list of labels", locus=locus)
    bits = 0
    for item in members:
        bits |= 1 << _member(frame, item, locus)
    return bits


def _entries(doc: dict, key: str, value_key: str, frame: Frame, numeric: str) -> dict[int, object]:
    entries = doc.get(key)
    if not isinstance(entries, list):
        raise ParseError(f"'{key}' must be a list of entries", locus=key)
    out: dict[int, object] = {}
    for i, entry in enumerate(entries):
        locus = f"{key}[{i}]"
        if not isinstance(entry, dict) or "set" not in entry or value_key not in entry:
            raise ParseError(f"each entry needs 'set' and '{value_key}'", locus=locus)
        extra = set(entry) - {"set", value_key}
        if extra:
            raise ParseError(f"unexpected keys {sorted(extra)}", locus=locus)
        bits = _set_bits(frame, entry["set"], locus)
        if bits in out:
            raise ParseError(f"set {frame.format(bits)} is listed twice", locus=locus)
        out[bits] = _scalar(entry[value_key], numeric, locus)
    return out


def _metadata(doc: dict) -> dict[str, str]:
    meta = {}
    for key in METADATA_KEYS:
        if key in doc:
            if not isinstance(doc[key], str):
                raise ParseError("metadata values must be strings", locus=key)
            meta[key] = doc[key]
    return meta


def _random_variables(doc: dict, frame: Frame, numeric: str) -> dict[str, RandomVariable]:
    block = doc.get("random_variables", {})
    if not isinstance(block, dict):
        raise ParseError("'random_variables' must map names to {label: value}", locus="random_variables")
    out = {}
    for name, mapping in block.items():
        locus = f"random_variables.{name}"
        if not isinstance(mapping, dict):
            raise ParseError("expected a {label: value} mapping", locus=locus)
        values = {}
        for label, value in mapping.items():
            values[label] = _scalar(value, numeric, f"{locus}.{label}")
        try:
            out[name] = RandomVariable.from_mapping(frame, values, numeric)
        except BeliefError as exc:
            exc.locus = locus
            raise
        except ValueError as exc:
            raise ParseError(str(exc), locus=locus) from None
    return out


def is_price_document(text: str) -> bool:
    return "prices" in _parse_json(text)


def load_model(text: str, numeric: str = RATIONAL) -> Model:
    check_mode(numeric)
    doc = _parse_json(text)
    frame = _frame(doc)
    raw = _entries(doc, "masses", "mass", frame, numeric)
    try:
        mass = MassFunction(frame, raw, numeric)
    except MassError as exc:
        exc.locus = "masses"
        raise
    return Model(frame, mass, _random_variables(doc, frame, numeric), _metadata(doc))


def load_prices(text: str, numeric: str = RATIONAL) -> PriceModel:
    check_mode(numeric)
    doc = _parse_json(text)
    frame = _frame(doc)
    raw = _entries(doc, "prices", "price", frame, numeric)
    values = [0] * (1 << frame.size)
    for bits, v in raw.items():
        values[bits] = v
    return PriceModel(frame, SetFunction(frame, values, numeric), _metadata(doc))


def _dump(doc: dict) -> str:
    """Indented JSON with one line per mass/price entry, frame and random variable."""
    lines = []
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            body = ",\n".join("    " + json.dumps(v, ensure_ascii=False) for v in value)
            lines.append(f"  {json.dumps(key)}: [\n{body}\n  ]")
        elif key == "random_variables":
            body = ",\n".join(
                f"    {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in value.items()
            )
            lines.append(f"  {json.dumps(key)}: {{\n{body}\n  }}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _frame_doc(frame: Frame):
    if isinstance(frame, ProductFrame):
        return {"left": list(frame.left.names), "right": list(frame.right.names)}
    return list(frame.names)


def save_model(
    mass: MassFunction,
    random_variables: dict[str, RandomVariable] | None = None,
    metadata: dict[str, str] | None = None,
) -> str:
    frame = mass.frame
    doc: dict = {}
    for key in METADATA_KEYS:
        if metadata and key in metadata:
            doc[key] = metadata[key]
    doc["frame"] = _frame_doc(frame)
    doc["masses"] = [{"set": frame.labels(c), "mass": format_scalar(v)} for c, v in mass.raw().items()]
    if random_variables:
        doc["random_variables"] = {
            name: {w: format_scalar(v) for w, v in zip(frame.names, rv.values)}
            for name, rv in sorted(random_variables.items())
        }
    return _dump(doc)


def save(model: Model) -> str:
    return save_model(model.mass, model.random_variables, model.metadata)


def save_prices(prices: SetFunction, metadata: dict[str, str] | None = None) -> str:
    frame = prices.frame
    doc: dict = {}
    for key in METADATA_KEYS:
        if metadata and key in metadata:
            doc[key] = metadata[key]
    doc["frame"] = _frame_doc(frame)
    doc["prices"] = [
        {"set": frame.labels(b), "price": format_scalar(v)} for b, v in enumerate(prices.values) if v != 0
    ]
    return _dump(doc)
