"""JSON datum files.

Reduced form::

    {"parameters": ["q"], "group_rank": 1, "theta": 1,
     "K": [[1]], "L": [[1]], "chi": [["q^2"]], "ell": ["1"],
     "cartan": [[2]]}

``chi[j][k]`` is chi_j evaluated on the k-th generator of Gamma.  A general
YD-datum replaces K/L/ell by ``"g"`` and a linking map
``"lambda": [[i, j, "value"], ...]`` with 1-based vertex indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .datum import LinkingParameter, ReducedDatum, YDDatum
from .errors import InvalidDatum, ParseError
from .lattice import AbelianGroup, Character
from .scalars import ParameterSpace


@dataclass
class LoadedDatum:
    kind: str  # "reduced" or "yd"
    reduced: ReducedDatum | None = None
    yd: YDDatum | None = None
    linking: LinkingParameter | None = None


def _need(obj, key):
    if key not in obj:
        raise InvalidDatum(f"datum file is missing {key!r}")
    return obj[key]


def _elements(G, rows, what):
    out = []
    for row in rows:
        if not isinstance(row, list) or not all(isinstance(x, int) for x in row):
            raise InvalidDatum(f"{what} entries must be integer exponent lists")
        out.append(G.element(row))
    return out


def _characters(G, sp, rows):
    out = []
    for row in rows:
        if not isinstance(row, list):
            raise InvalidDatum("chi entries must be lists of unit strings")
        out.append(Character(G, [sp.parse_unit(str(v)) for v in row], sp))
    return out


def parse_datum(obj, name=None) -> LoadedDatum:
    if not isinstance(obj, dict):
        raise InvalidDatum("datum file must hold a JSON object")
    params = _need(obj, "parameters")
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise InvalidDatum("'parameters' must be a list of names")
    sp = ParameterSpace(params)
    rank = _need(obj, "group_rank")
    if not isinstance(rank, int) or rank < 1:
        raise InvalidDatum("'group_rank' must be a positive integer")
    G = AbelianGroup(rank)
    theta = _need(obj, "theta")
    chi = _characters(G, sp, _need(obj, "chi"))
    if len(chi) != theta:
        raise InvalidDatum(f"expected {theta} characters, got {len(chi)}")
    if "g" in obj:
        g = _elements(G, obj["g"], "g")
        yd = YDDatum(G, sp, g, chi)
        vals = {}
        for entry in obj.get("lambda", []):
            if not (isinstance(entry, list) and len(entry) == 3):
                raise InvalidDatum("lambda entries must be [i, j, value]")
            i, j, v = entry
            if not (1 <= i <= theta and 1 <= j <= theta):
                raise InvalidDatum(f"lambda index ({i}, {j}) out of range")
            vals[(i - 1, j - 1)] = sp.parse(str(v))
        return LoadedDatum("yd", yd=yd, linking=LinkingParameter(vals))
    K = _elements(G, _need(obj, "K"), "K")
    L = _elements(G, _need(obj, "L"), "L")
    ell = [sp.parse(str(v)) for v in _need(obj, "ell")]
    red = ReducedDatum(G, sp, K, L, chi, ell, name=obj.get("name", name), declared_cartan=obj.get("cartan"))
    return LoadedDatum("reduced", reduced=red)


def load_datum(path) -> LoadedDatum:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise InvalidDatum(f"{path}: {exc.strerror}") from None
    return parse_datum(obj, name=str(path))


def dump_reduced(red: ReducedDatum) -> dict:
    out = {
        "parameters": list(red.space.names),
        "group_rank": red.group.rank,
        "theta": red.theta,
        "K": [list(k.exponents) for k in red.K],
        "L": [list(x.exponents) for x in red.L],
        "chi": [[str(v) for v in c.values] for c in red.chi],
        "ell": [str(x) for x in red.ell],
    }
    if red.name:
        out["name"] = red.name
    return out


def dump_yd(datum: YDDatum, lam: LinkingParameter) -> dict:
    return {
        "parameters": list(datum.space.names),
        "group_rank": datum.group.rank,
        "theta": datum.theta,
        "g": [list(x.exponents) for x in datum.g],
        "chi": [[str(v) for v in c.values] for c in datum.chi],
        "lambda": [[i + 1, j + 1, str(v)] for (i, j), v in sorted(lam.values.items())],
    }
