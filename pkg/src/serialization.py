"""
JSON Serialization
Decodes input schemas and encodes results as deterministic JSON reports
"""

import json
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from .constants import REPORT_INDENT
from .covers import FketCover, GammaSet, LogPoint
from .errors import InputFileError, LogMonoidError, SchemaError
from .finite_field import Fq, to_int_rows
from .gammacoh import GammaModule
from .kummer import KummerData
from .lattice import FinAbGroup, GroupHom, IntMatrix, Vector
from .monoids import IntegralMonoid, MonoidHom

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------


def load_json(path: str | Path) -> Any:
    """
    Read a JSON document from an explicit path.

    Raises:
        InputFileError: If the file cannot be read
        SchemaError: If the content is not valid JSON
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"cannot read {path}: {e.strerror or e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e


def _require(data: Any, key: str, where: str) -> Any:
    if not isinstance(data, Mapping):
        raise SchemaError(f"{where}: expected an object")
    if key not in data:
        raise SchemaError(f"{where}: missing key {key!r}")
    return data[key]


def decode_int(value: Any, where: str = "value") -> int:
    """Accept JSON integers or decimal strings."""
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise SchemaError(f"{where}: expected an integer or decimal string, got {value!r}")


def decode_vector(value: Any, where: str = "vector") -> Vector:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list")
    return tuple(decode_int(x, f"{where}[{i}]") for i, x in enumerate(value))


def decode_vectors(value: Any, where: str = "vectors") -> list[Vector]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list of vectors")
    return [decode_vector(v, f"{where}[{i}]") for i, v in enumerate(value)]


def decode_group(data: Any, where: str = "group") -> FinAbGroup:
    """{"free_rank": r, "torsion": [d_1, ...]}; orders are normalized to invariant factors."""
    free_rank = decode_int(_require(data, "free_rank", where), f"{where}.free_rank")
    torsion = decode_vector(data.get("torsion", []), f"{where}.torsion")
    try:
        return FinAbGroup.from_orders(free_rank, torsion)
    except LogMonoidError as e:
        raise SchemaError(f"{where}: {e}") from e


def decode_monoid(data: Any, where: str = "monoid") -> IntegralMonoid:
    """
    {"ambient": group, "generators": [[...], ...]}.

    The ambient defaults to Z^r with r the generator length; {"free": r} is Z≥0^r.
    """
    if isinstance(data, Mapping) and "free" in data:
        return IntegralMonoid.free(decode_int(data["free"], f"{where}.free"))
    gens = decode_vectors(_require(data, "generators", where), f"{where}.generators")
    if "ambient" in data:
        ambient = decode_group(data["ambient"], f"{where}.ambient")
    else:
        lengths = {len(g) for g in gens}
        if len(lengths) != 1:
            raise SchemaError(f"{where}: cannot infer the ambient group from generators")
        ambient = FinAbGroup.free(lengths.pop())
    return IntegralMonoid(ambient, tuple(gens))


def decode_hom(data: Any, where: str = "hom") -> MonoidHom:
    """{"source": monoid, "target": monoid, "images": [[...], ...]} (images of source generators)."""
    source = decode_monoid(_require(data, "source", where), f"{where}.source")
    target = decode_monoid(_require(data, "target", where), f"{where}.target")
    images = decode_vectors(_require(data, "images", where), f"{where}.images")
    return MonoidHom(source, target, tuple(images))


def decode_point(data: Any, where: str = "point") -> LogPoint:
    """A log point is given by its characteristic monoid, bare or under "characteristic"."""
    if isinstance(data, Mapping) and "characteristic" in data:
        data = data["characteristic"]
    return LogPoint(decode_monoid(data, where))


def decode_module(data: Any, where: str = "module") -> GammaModule:
    """{"q": q, "dim": d, "gammas": [[[...]]]}."""
    fq = Fq(decode_int(_require(data, "q", where), f"{where}.q"))
    dim = decode_int(_require(data, "dim", where), f"{where}.dim")
    raw = _require(data, "gammas", where)
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.gammas: expected a list of matrices")
    gammas = [decode_vectors(g, f"{where}.gammas[{j}]") for j, g in enumerate(raw)]
    return GammaModule.from_rows(fq, dim, gammas)


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------


def encode_vector(v: Sequence[int]) -> list[str]:
    return [str(int(x)) for x in v]


def encode_vectors(vs: Sequence[Sequence[int]]) -> list[list[str]]:
    return [encode_vector(v) for v in vs]


def encode_group(group: FinAbGroup) -> dict:
    return {"free_rank": group.free_rank, "torsion": list(group.torsion)}


def encode_matrix(m: IntMatrix) -> list[list[str]]:
    return encode_vectors(m.to_rows())


def encode_group_hom(f: GroupHom) -> dict:
    return {"source": encode_group(f.source), "target": encode_group(f.target), "matrix": encode_matrix(f.matrix)}


def encode_monoid(monoid: IntegralMonoid) -> dict:
    return {"ambient": encode_group(monoid.ambient), "generators": encode_vectors(monoid.generators)}


def encode_hom(u: MonoidHom) -> dict:
    return {"source": encode_monoid(u.source), "target": encode_monoid(u.target), "images": encode_vectors(u.images)}


def encode_kummer(data: KummerData) -> dict:
    return {"hom": encode_hom(data.hom), "G": encode_group(data.cokernel_group), "exponent": data.exponent}


def encode_gamma_set(gamma_set: GammaSet) -> dict:
    return {
        "level": gamma_set.level,
        "rank": gamma_set.rank,
        "elements": encode_vectors(gamma_set.elements),
        "permutations": [list(p) for p in gamma_set.permutations],
    }


def encode_cover(cover: FketCover) -> dict:
    return {
        "level": cover.level,
        "subgroup": encode_vectors(cover.subgroup.generators),
        "degree": cover.degree,
        "monoid": encode_vectors(cover.generators_in_level()),
    }


def encode_module(module: GammaModule) -> dict:
    return {
        "q": module.field.order,
        "dim": module.dim,
        "gammas": [encode_vectors(to_int_rows(g)) for g in module.gammas],
    }


def to_json_string(obj: Any, indent: int = REPORT_INDENT) -> str:
    """Byte-stable rendering: sorted keys, fixed indent, trailing newline."""
    return json.dumps(obj, indent=indent, sort_keys=True, ensure_ascii=False) + "\n"
