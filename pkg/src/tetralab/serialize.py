"""JSON state and tau files, and CSV export of spectral coefficients.

Rationals are stored as ``"p/q"`` strings so exact checks survive a round
trip; complex numbers as ``[re, im]``.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core.rings import CMat, format_rat, parse_rat
from .core.weyl import clock_shift, embed
from .lattice.hirota import TauField
from .lattice.kagome import KagomeState, kagome_from_params, kagome_from_values, site_slot


class SchemaError(ValueError):
    """Input file does not match the expected layout."""


def _complex(x) -> complex:
    if not (isinstance(x, list) and len(x) == 2 and all(isinstance(c, int | float) for c in x)):
        raise SchemaError(f"complex value must be [re, im], got {x!r}")
    return complex(x[0], x[1])


def _rat(x) -> Fraction:
    try:
        return parse_rat(x)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def state_to_dict(s: KagomeState) -> dict:
    out = {"N": s.N, "ring": s.ring}
    sites = []
    if s.ring == "rational":
        for a, i, j in s.sites():
            w = s[a, i, j]
            sites.append({"alpha": a, "i": i, "j": j, "u": format_rat(w.u), "v": format_rat(w.v)})
    else:
        out["M"] = s.M
        X, Z, _ = clock_shift(s.M)
        K = 3 * s.N * s.N
        for a, i, j in s.sites():
            slot = site_slot(s.N, a, i, j)
            w = s[a, i, j]
            x = _single_site_scale(w.u, embed(X.a, slot, K))
            y = _single_site_scale(w.v, embed(Z.a, slot, K))
            sites.append({"alpha": a, "i": i, "j": j, "u": [x.real, x.imag], "v": [y.real, y.imag]})
    out["sites"] = sites
    return out


def _single_site_scale(m: CMat, base: np.ndarray) -> complex:
    """``x`` with ``m = x * base``; other cyclic states have no compact form."""
    # read x off an entry where base is exactly 1, so the value round-trips bit-exactly
    r, c = np.argwhere(base == 1)[0]
    x = complex(m.a[r, c])
    if np.max(np.abs(m.a - x * base)) > 1e-12:
        raise ValueError("only cyclic states of the form u = x X, v = y Z per site can be saved")
    return x


def state_from_dict(d: dict) -> KagomeState:
    try:
        N = d["N"]
        ring = d.get("ring", "rational")
        raw = d["sites"]
    except (KeyError, TypeError):
        raise SchemaError("state needs keys 'N' and 'sites'") from None
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise SchemaError(f"N must be a positive integer, got {N!r}")
    values = {}
    for site in raw:
        try:
            key = (int(site["alpha"]), int(site["i"]), int(site["j"]))
            u, v = site["u"], site["v"]
        except (KeyError, TypeError, ValueError):
            raise SchemaError(f"malformed site entry {site!r}") from None
        if key in values:
            raise SchemaError(f"duplicate site {key}")
        values[key] = (u, v)
    try:
        if ring == "rational":
            return kagome_from_values(N, {k: (_rat(u), _rat(v)) for k, (u, v) in values.items()})
        if ring == "cyclic":
            M = d.get("M")
            if not isinstance(M, int) or M < 2:
                raise SchemaError("cyclic state needs an integer 'M' >= 2")
            return kagome_from_params(N, M, {k: (_complex(u), _complex(v)) for k, (u, v) in values.items()})
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    raise SchemaError(f"unknown ring {ring!r}")


def save_state(s: KagomeState, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(s), indent=2) + "\n")


def load_state(path) -> KagomeState:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return state_from_dict(d)


def _point_key(n) -> str:
    return ",".join(str(c) for c in n)


def _parse_point(key: str) -> tuple:
    try:
        n = tuple(int(c) for c in key.split(","))
    except ValueError:
        raise SchemaError(f"bad lattice point {key!r}") from None
    if len(n) != 3:
        raise SchemaError(f"lattice point needs three coordinates, got {key!r}")
    return n


def tau_to_dict(tau1: TauField, tau2: TauField) -> dict:
    return {
        "block": list(tau1.block),
        "tau1": {_point_key(n): format_rat(x) for n, x in sorted(tau1.values.items())},
        "tau2": {_point_key(n): format_rat(x) for n, x in sorted(tau2.values.items())},
    }


def tau_from_dict(d: dict) -> tuple[TauField, TauField]:
    try:
        block = tuple(int(b) for b in d["block"])
        raw = (d["tau1"], d["tau2"])
    except (KeyError, TypeError, ValueError):
        raise SchemaError("tau file needs 'block', 'tau1' and 'tau2'") from None
    if len(block) != 3 or min(block) < 1:
        raise SchemaError(f"block must be three positive sizes, got {block}")
    fields = []
    for vals in raw:
        try:
            fields.append(TauField(block, {_parse_point(k): _rat(v) for k, v in vals.items()}))
        except SchemaError:
            raise
        except (ValueError, ArithmeticError, AttributeError) as exc:
            raise SchemaError(str(exc)) from None
    return fields[0], fields[1]


def save_tau(tau1: TauField, tau2: TauField, path) -> None:
    Path(path).write_text(json.dumps(tau_to_dict(tau1, tau2), indent=2) + "\n")


def load_tau(path) -> tuple[TauField, TauField]:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return tau_from_dict(d)


def coefficient_rows(polys) -> list[tuple]:
    """``(kind, a, b, value)`` rows sorted by kind then exponent; ``polys`` maps kind to JPoly."""
    rows = []
    for kind in sorted(polys):
        for (a, b), c in sorted(polys[kind].poly.terms.items()):
            if isinstance(c, Fraction):
                val = format_rat(c)
            elif isinstance(c, CMat):
                raise ValueError("operator-valued coefficients have no CSV form")
            else:
                z = complex(c)
                val = f"{z.real!r} {z.imag!r}"
            rows.append((kind, a, b, val))
    return rows


def write_coefficients_csv(polys, path) -> int:
    rows = coefficient_rows(polys)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "a", "b", "value"])
        w.writerows(rows)
    return len(rows)
