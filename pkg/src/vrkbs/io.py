"""CSV datasets, JSON model files and space construction from parameters.

Floats are written with 17 significant digits, so every value round-trips
exactly and a load-then-save cycle reproduces the file byte for byte.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from vrkbs.kernel import FeatureMap
from vrkbs.learn import LossSpec, Model, RegularizerSpec
from vrkbs.zoo import (
    SensingMatrixSpace,
    TensorProductSpace,
    TranslationInvariantSpace,
    make_kernel,
)

__all__ = [
    "InputError",
    "format_float",
    "dumps",
    "read_dataset",
    "write_csv",
    "build_space",
    "encode_array",
    "decode_array",
    "model_to_dict",
    "model_from_dict",
    "save_model",
    "load_model",
]

MODEL_FORMAT = "vrkbs-model"
SCHEMA = 1


class InputError(ValueError):
    """Malformed user input; the message carries the offending line when known."""


# --- JSON -----------------------------------------------------------------
def format_float(x: float) -> str:
    s = format(float(x), ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _emit(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k)) + ": ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(" " * (indent * level) + "}")
    elif isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(" " * (indent * level) + "]")
    else:
        out.append(_scalar(obj))


def _scalar(v):
    if v is None or isinstance(v, (bool, np.bool_)):
        return json.dumps(None if v is None else bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v) if math.isfinite(v) else "null"
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON with insertion-ordered keys and 17-digit floats."""
    out: list = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


def encode_array(a):
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return {"real": a.real.tolist(), "imag": a.imag.tolist()}
    return a.astype(float).tolist()


def decode_array(v):
    if isinstance(v, dict):
        return np.asarray(v["real"], dtype=float) + 1j * np.asarray(v["imag"], dtype=float)
    return np.asarray(v, dtype=float)


# --- CSV ------------------------------------------------------------------
def read_dataset(path):
    """Read a headered CSV of reals. Returns (header, rows) with rows an (N, k) array."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: cannot read: {exc}") from exc
    lines = list(csv.reader(text.splitlines()))
    if not lines:
        return [], np.zeros((0, 0))
    header = [h.strip() for h in lines[0]]
    if not header or any(not h for h in header):
        raise InputError(f"{path}: line 1: empty header cell")
    if all(_is_number(h) for h in header):
        raise InputError(f"{path}: line 1: a header row is required")
    rows = []
    for lineno, cells in enumerate(lines[1:], start=2):
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) != len(header):
            raise InputError(f"{path}: line {lineno}: expected {len(header)} cells, "
                             f"got {len(cells)}")
        try:
            vals = [float(c) for c in cells]
        except ValueError:
            raise InputError(f"{path}: line {lineno}: non-numeric or missing cell") from None
        if not all(math.isfinite(v) for v in vals):
            raise InputError(f"{path}: line {lineno}: non-finite value")
        rows.append(vals)
    data = np.asarray(rows, dtype=float).reshape(len(rows), len(header))
    return header, data


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if not header:
            return
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([format_float(v) for v in r])


# --- spaces ---------------------------------------------------------------
def build_space(spec: dict) -> FeatureMap:
    kind = spec["kind"]
    d, n = int(spec["d"]), int(spec["n"])
    if kind == "tensor":
        kernel = make_kernel(spec["kernel"], d)
        sp = TensorProductSpace([kernel] * n, p=spec["p"], r=spec["r"])
        return sp.feature_map()
    if kind == "ti":
        sp = TranslationInvariantSpace(d, n, np.asarray(spec["S"], dtype=float), p=spec["p"],
                                       output_exponent=spec["r"],
                                       normalization=spec["normalization"])
        g = spec["grid"]
        return sp.discretized_feature_map(int(g["points"]), float(g["half_width"]))
    if kind == "sensing":
        sp = SensingMatrixSpace(d, n, p=spec["p"], r=spec["r"], gamma=spec["gamma"],
                                transpose=bool(spec["transpose"]))
        return sp.feature_map()
    raise InputError(f"unknown space kind {kind!r}")


# --- models ---------------------------------------------------------------
def model_to_dict(model: Model, space_spec: dict, lam: float, loss: LossSpec,
                  regularizer: RegularizerSpec, samples, diagnostics: dict) -> dict:
    return {
        "format": MODEL_FORMAT,
        "schema": SCHEMA,
        "space": space_spec,
        "lambda": float(lam),
        "loss": loss.to_dict(),
        "regularizer": regularizer.to_dict(),
        "samples": np.asarray(samples, dtype=float).tolist(),
        "eta": encode_array(model.eta),
        "u": encode_array(model.u),
        "diagnostics": diagnostics,
    }


def model_from_dict(d: dict):
    """Returns (model, document). The feature map is rebuilt from the space block."""
    if d.get("format") != MODEL_FORMAT:
        raise InputError("not a model file")
    if d.get("schema") != SCHEMA:
        raise InputError(f"unsupported model schema {d.get('schema')!r}")
    fm = build_space(d["space"])
    u = fm.feature_space.coerce(decode_array(d["u"]).astype(fm.feature_space.dtype))
    eta = decode_array(d["eta"])
    diag = d.get("diagnostics", {})
    model = Model(u=u, eta=eta, space=fm,
                  objective=_num(diag.get("objective")),
                  gradient_norm=_num(diag.get("gradient_norm")),
                  iterations=int(diag.get("iterations", 0)),
                  converged=bool(diag.get("converged", True)))
    return model, d


def save_model(path, doc: dict):
    Path(path).write_text(dumps(doc), encoding="utf-8")


def load_model(path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: cannot load model: {exc}") from exc
    try:
        return model_from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: malformed model: {exc}") from exc


def _num(v):
    return float("nan") if v is None else float(v)


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True
