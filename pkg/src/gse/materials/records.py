"""Material property records with provenance tags.

Every record carries thermal properties (conductivity, density, specific
heat) and embodied coefficients (energy MJ/kg, water L/kg) plus the citation
its values were sourced from. Names are matched exactly after
canonicalization; no fuzzy matching.
"""
from __future__ import annotations

import csv
import enum
import logging
import re
from dataclasses import dataclass, asdict
from importlib import resources

from ..errors import ValidationError

log = logging.getLogger(__name__)

BATCH_SIZE = 30  # response page size served and asserted client-side

_WS = re.compile(r"\s+")


def canonical_name(name: str) -> str:
    """Case-folded, whitespace-normalized key; idempotent."""
    return _WS.sub(" ", name.strip()).casefold()


class ReviewStatus(enum.Enum):
    UNREVIEWED = "Unreviewed"
    PEER_REVIEWED = "PeerReviewed"


@dataclass(frozen=True)
class MaterialRecord:
    canonical_name: str
    conductivity: float  # W/mK
    density: float  # kg/m3
    specific_heat: float  # J/kgK
    ee_coeff: float  # MJ/kg
    ew_coeff: float  # L/kg
    source_tag: str
    review_status: ReviewStatus = ReviewStatus.UNREVIEWED

    def __post_init__(self):
        object.__setattr__(self, "canonical_name", canonical_name(self.canonical_name))
        if not self.canonical_name:
            raise ValidationError("material name is empty")
        if not self.source_tag or not self.source_tag.strip():
            raise ValidationError(
                f"material {self.canonical_name!r} has no source_tag"
            )
        for field_name in ("conductivity", "density", "specific_heat", "ee_coeff", "ew_coeff"):
            value = getattr(self, field_name)
            if value < 0:
                raise ValidationError(
                    f"material {self.canonical_name!r}: {field_name} is negative"
                )

    def to_json(self) -> dict:
        d = asdict(self)
        d["review_status"] = self.review_status.value
        return d

    @classmethod
    def from_json(cls, d: dict) -> "MaterialRecord":
        ew = d.get("ew_coeff")
        if ew is None:
            log.warning(
                "material %r has no ew_coeff; treating as 0", d.get("canonical_name")
            )
            ew = 0.0
        return cls(
            canonical_name=d["canonical_name"],
            conductivity=float(d["conductivity"]),
            density=float(d["density"]),
            specific_heat=float(d["specific_heat"]),
            ee_coeff=float(d["ee_coeff"]),
            ew_coeff=float(ew),
            source_tag=d["source_tag"],
            review_status=ReviewStatus(d.get("review_status", "Unreviewed")),
        )


def load_dataset(path=None) -> dict[str, MaterialRecord]:
    """Load the delimited-text dataset; bundled one when no path is given."""
    if path is None:
        ref = resources.files("gse.materials").joinpath("data/materials.csv")
        with ref.open("r", encoding="utf-8") as fh:
            return _read_csv(fh)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return _read_csv(fh)


def _read_csv(fh) -> dict[str, MaterialRecord]:
    out: dict[str, MaterialRecord] = {}
    for row in csv.DictReader(fh):
        rec = MaterialRecord(
            canonical_name=row["name"],
            conductivity=float(row["conductivity_w_mk"]),
            density=float(row["density_kg_m3"]),
            specific_heat=float(row["specific_heat_j_kgk"]),
            ee_coeff=float(row["ee_mj_kg"]),
            ew_coeff=float(row["ew_l_kg"]),
            source_tag=row["source_tag"],
            review_status=ReviewStatus(row.get("review_status") or "Unreviewed"),
        )
        out[rec.canonical_name] = rec
    return out
