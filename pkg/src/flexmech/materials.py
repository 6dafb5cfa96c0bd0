"""Material properties and the measured single-joint catalog.

Moduli in N/mm^2 (MPa).  The isotropy assumption behind the derived shear
modulus is known to be shaky for FDM-printed parts; Material carries a
caveat string so reports can surface it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MechanismFileError

ISOTROPY_CAVEAT = (
    "shear modulus derived assuming isotropy; questionable for "
    "fused-deposition printed parts"
)


def derive_shear_modulus(e_modulus, nu):
    """G = E / (2 (1 + nu)) for an isotropic material."""
    if e_modulus <= 0.0:
        raise ValueError(f"Young's modulus must be positive, got {e_modulus}")
    if not -1.0 < nu < 0.5:
        raise ValueError(f"Poisson's ratio must lie in (-1, 0.5), got {nu}")
    return e_modulus / (2.0 * (1.0 + nu))


@dataclass(frozen=True)
class Material:
    """Isotropic elastic material; G derived from E and nu when not given."""

    name: str
    e_modulus: float          # N/mm^2
    nu: float
    g_modulus: float = None   # N/mm^2; derived if None
    caveat: str = ISOTROPY_CAVEAT

    def __post_init__(self):
        if self.g_modulus is None:
            object.__setattr__(self, "g_modulus", derive_shear_modulus(self.e_modulus, self.nu))
        else:
            derive_shear_modulus(self.e_modulus, self.nu)  # range checks
            if self.g_modulus <= 0.0:
                raise ValueError("shear modulus must be positive")

    def scaled(self, factor):
        """Same material with both moduli scaled; used by scaling invariance checks."""
        return Material(self.name, self.e_modulus * factor, self.nu,
                        self.g_modulus * factor, self.caveat)


@dataclass(frozen=True)
class MeasuredJointRecord:
    """One measured two-joint hinge variant: stiffnesses in Nm/rad, load in Nm."""

    variant: str
    cross_stiffness: float | None
    joint_stiffness: float
    max_joint_load: float

    def __post_init__(self):
        for name in ("cross_stiffness", "joint_stiffness", "max_joint_load"):
            v = getattr(self, name)
            if v is not None and v <= 0.0:
                raise ValueError(f"{name} must be positive, got {v}")


def stiffness_ratio(record: MeasuredJointRecord):
    """Cross-direction over joint-direction stiffness; None when cross is unmeasured."""
    if record.cross_stiffness is None:
        return None
    return record.cross_stiffness / record.joint_stiffness


def _parse_number(token, lineno, fieldname):
    try:
        v = float(token)
    except ValueError:
        raise MechanismFileError(f"not a number: {token!r}", lineno, fieldname) from None
    if not math.isfinite(v):
        raise MechanismFileError(f"non-finite number: {token!r}", lineno, fieldname)
    return v


def load_materials(lines, source="<materials>"):
    """Parse key=value material lines into a name -> Material dict.

    Format, one material per line::

        material <name> E=<N/mm^2> nu=<ratio> [G=<N/mm^2>]

    Blank lines and '#' comments are ignored.
    """
    out = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "material" or len(parts) < 2:
            raise MechanismFileError(
                f"expected 'material <name> E=.. nu=..', got {raw.strip()!r}", lineno)
        name = parts[1]
        kv = {}
        for tok in parts[2:]:
            if "=" not in tok:
                raise MechanismFileError(f"expected key=value, got {tok!r}", lineno, name)
            key, val = tok.split("=", 1)
            kv[key] = _parse_number(val, lineno, key)
        if "E" not in kv or "nu" not in kv:
            raise MechanismFileError("material needs E and nu", lineno, name)
        if name in out:
            raise MechanismFileError(f"duplicate material {name!r}", lineno, name)
        out[name] = Material(name, kv["E"], kv["nu"], kv.get("G"))
    if not out:
        raise MechanismFileError(f"no materials found in {source}")
    return out


def load_joint_catalog(lines):
    """Parse the measured joint catalog (read-only comparison data).

    Format, one record per line::

        joint <variant> cross=<Nm/rad|-> joint=<Nm/rad> max_load=<Nm>
    """
    records = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "joint" or len(parts) < 2:
            raise MechanismFileError(
                f"expected 'joint <variant> cross=.. joint=.. max_load=..', got {raw.strip()!r}",
                lineno)
        variant = parts[1]
        kv = {}
        for tok in parts[2:]:
            key, _, val = tok.partition("=")
            kv[key] = None if val == "-" else _parse_number(val, lineno, key)
        try:
            records.append(MeasuredJointRecord(variant, kv.get("cross"),
                                               kv["joint"], kv["max_load"]))
        except KeyError as exc:
            raise MechanismFileError(f"missing field {exc}", lineno, variant) from None
    return records
