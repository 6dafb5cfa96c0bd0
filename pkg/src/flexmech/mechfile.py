"""Line-oriented mechanism file format: parsing and canonical serialization.

Layout (units fixed to mm / degrees / N, declared in a mandatory header)::

    flexmech mechanism format 1
    units mm deg N

    [materials]
    material copolyester E=43.8 nu=0.48

    [elements]
    hinge notch material=copolyester r=1.25 t=2.82 w=5 h1=0
    beam  column material=copolyester l=10.4 w=5 s=5.32

    [limb left]
    member notch  r=42.85,14.765,0 theta=0
    member column r=10.4,0,0       theta=20
    member notch  r=9.15,0,0       theta=0

    [mechanism]
    reference middle of upper platform
    limb left  r=-2.5,10.325,-8.65
    ...

    [sweep]            # optional
    vary t 2.0 4.0 3
    target rcc_height 28.6 weight=1

    [measured]         # optional
    measured z 2.54
    measured y 8.3 10

Placements r point member -> limb tip (limb sections) and limb tip ->
reference (mechanism section); angles are degrees in files, radians inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import SweepObjective, SweepSpec
from .elements import BeamGeometry, HingeGeometry
from .errors import MechanismFileError
from .materials import load_materials
from .mechanism import Limb, Mechanism
from .spatial import FramePlacement

FORMAT_HEADER = "flexmech mechanism format 1"
UNITS_HEADER = "units mm deg N"


@dataclass(frozen=True)
class ParsedMechanism:
    """Full object graph of one mechanism file."""

    mechanism: Mechanism
    materials: dict
    elements: dict
    sweep: SweepSpec | None
    measured: dict | None


def _num(token, lineno, field):
    try:
        v = float(token)
    except ValueError:
        raise MechanismFileError(f"not a number: {token!r}", lineno, field) from None
    if not math.isfinite(v):
        raise MechanismFileError(f"non-finite number: {token!r}", lineno, field)
    return v


def _kv(tokens, lineno, context):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise MechanismFileError(f"expected key=value, got {tok!r}", lineno, context)
        key, val = tok.split("=", 1)
        out[key] = (val, lineno)
    return out


def _placement(kv, lineno, context):
    if "r" not in kv:
        raise MechanismFileError("missing displacement r=x,y,z", lineno, context)
    rtxt, rline = kv["r"]
    parts = rtxt.split(",")
    if len(parts) != 3:
        raise MechanismFileError(f"r needs three components, got {rtxt!r}", rline, context)
    r = tuple(_num(p, rline, "r") for p in parts)
    theta = 0.0
    if "theta" in kv:
        ttxt, tline = kv["theta"]
        theta = _num(ttxt, tline, "theta")
    return FramePlacement.from_degrees(theta, r)


def _split_sections(lines):
    """Header check plus section splitting; keeps line numbers for errors."""
    body = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            body.append((lineno, stripped))
    if not body or body[0][1] != FORMAT_HEADER:
        raise MechanismFileError(
            f"first line must declare the format: {FORMAT_HEADER!r}", line=body[0][0] if body else 1)
    if len(body) < 2 or body[1][1] != UNITS_HEADER:
        raise MechanismFileError(
            f"unit header missing: second line must be {UNITS_HEADER!r}",
            line=body[1][0] if len(body) > 1 else body[0][0])
    sections = []
    current = None
    for lineno, line in body[2:]:
        if line.startswith("[") and line.endswith("]"):
            current = (line[1:-1].strip(), lineno, [])
            sections.append(current)
        elif current is None:
            raise MechanismFileError(f"content outside any section: {line!r}", lineno)
        else:
            current[2].append((lineno, line))
    return sections


def _parse_elements(entries, materials):
    elements = {}
    for lineno, line in entries:
        parts = line.split()
        if len(parts) < 3 or parts[0] not in ("hinge", "beam"):
            raise MechanismFileError(
                f"expected 'hinge <name> ...' or 'beam <name> ...', got {line!r}", lineno)
        kind, name = parts[0], parts[1]
        if name in elements:
            raise MechanismFileError(f"duplicate element {name!r}", lineno, name)
        kv = {k: v for k, v in _kv(parts[2:], lineno, name).items()}
        if "material" not in kv:
            raise MechanismFileError("element needs material=<name>", lineno, name)
        mat_name = kv.pop("material")[0]
        if mat_name not in materials:
            raise MechanismFileError(f"unknown material {mat_name!r}", lineno, name)
        nums = {k: _num(v[0], v[1], k) for k, v in kv.items()}
        try:
            if kind == "hinge":
                elements[name] = HingeGeometry(nums["r"], nums["t"], nums["w"],
                                               nums.get("h1", 0.0), materials[mat_name])
            else:
                elements[name] = BeamGeometry(nums["l"], nums["w"], nums["s"],
                                              materials[mat_name])
        except KeyError as exc:
            raise MechanismFileError(f"missing field {exc}", lineno, name) from None
        except ValueError as exc:
            raise MechanismFileError(str(exc), lineno, name) from None
    return elements


def _parse_limb(name, entries, elements):
    members = []
    for lineno, line in entries:
        parts = line.split()
        if parts[0] != "member" or len(parts) < 3:
            raise MechanismFileError(f"expected 'member <element> r=.. theta=..', got {line!r}",
                                     lineno, name)
        elem_name = parts[1]
        if elem_name not in elements:
            raise MechanismFileError(f"dangling element reference {elem_name!r}", lineno, name)
        placement = _placement(_kv(parts[2:], lineno, elem_name), lineno, elem_name)
        members.append((elements[elem_name], placement))
    try:
        return Limb(name, tuple(members))
    except ValueError as exc:
        raise MechanismFileError(str(exc), entries[0][0] if entries else None, name) from None


def _parse_mechanism_section(entries, limbs, section_line):
    reference = "reference point"
    placed = []
    for lineno, line in entries:
        parts = line.split()
        if parts[0] == "reference":
            reference = line.partition(" ")[2].strip() or reference
        elif parts[0] == "limb":
            if len(parts) < 3:
                raise MechanismFileError(f"expected 'limb <name> r=..', got {line!r}", lineno)
            limb_name = parts[1]
            if limb_name not in limbs:
                raise MechanismFileError(f"unknown limb {limb_name!r}", lineno, limb_name)
            placed.append((limbs[limb_name], _placement(_kv(parts[2:], lineno, limb_name),
                                                        lineno, limb_name)))
        else:
            raise MechanismFileError(f"unexpected mechanism line {line!r}", lineno)
    try:
        return Mechanism(tuple(placed), reference)
    except ValueError as exc:
        raise MechanismFileError(str(exc), section_line) from None


def _parse_sweep(entries):
    parameters = {}
    target_rcc = None
    ratio_max = False
    diag_targets = {}
    weights = {}

    def weight_of(kv, lineno):
        if "weight" in kv:
            return _num(kv["weight"][0], lineno, "weight")
        return None

    for lineno, line in entries:
        parts = line.split()
        kv = _kv([p for p in parts if "=" in p], lineno, parts[0])
        bare = [p for p in parts if "=" not in p]
        if bare[0] == "vary":
            if len(bare) != 5:
                raise MechanismFileError(f"expected 'vary <name> <lo> <hi> <n>', got {line!r}", lineno)
            name = bare[1]
            lo, hi = _num(bare[2], lineno, name), _num(bare[3], lineno, name)
            n = int(_num(bare[4], lineno, name))
            parameters[name] = (lo, hi, n)
        elif bare[0] == "target" and len(bare) >= 3 and bare[1] == "rcc_height":
            target_rcc = _num(bare[2], lineno, "rcc_height")
            w = weight_of(kv, lineno)
            if w is not None:
                weights["rcc"] = w
        elif bare[0] == "maximize" and len(bare) >= 2 and bare[1] == "stiffness_ratio":
            ratio_max = True
            w = weight_of(kv, lineno)
            if w is not None:
                weights["ratio"] = w
        elif bare[0] == "target_k" and len(bare) >= 3:
            diag_targets[bare[1]] = _num(bare[2], lineno, bare[1])
            w = weight_of(kv, lineno)
            if w is not None:
                weights["diag"] = w
        else:
            raise MechanismFileError(f"unexpected sweep line {line!r}", lineno)
    try:
        return SweepSpec(parameters,
                         SweepObjective(target_rcc, ratio_max, diag_targets or None, weights))
    except ValueError as exc:
        raise MechanismFileError(str(exc), entries[0][0] if entries else None) from None


def _parse_measured(entries):
    measured = {}
    for lineno, line in entries:
        parts = line.split()
        if parts[0] != "measured" or len(parts) not in (3, 4):
            raise MechanismFileError(
                f"expected 'measured <axis> <value> [<high>]', got {line!r}", lineno)
        axis = parts[1]
        lo = _num(parts[2], lineno, axis)
        if len(parts) == 4:
            measured[axis] = (lo, _num(parts[3], lineno, axis))
        else:
            measured[axis] = lo
    return measured


def parse_lines(lines) -> ParsedMechanism:
    sections = _split_sections(lines)
    materials = {}
    elements = {}
    limbs = {}
    mechanism = None
    sweep = None
    measured = None
    for name, lineno, entries in sections:
        if name == "materials":
            materials = load_materials([e[1] for e in entries])
        elif name == "elements":
            elements = _parse_elements(entries, materials)
        elif name.startswith("limb"):
            limb_name = name.split(None, 1)[1] if " " in name else name
            if limb_name in limbs:
                raise MechanismFileError(f"duplicate limb section {limb_name!r}", lineno)
            limbs[limb_name] = _parse_limb(limb_name, entries, elements)
        elif name == "mechanism":
            mechanism = _parse_mechanism_section(entries, limbs, lineno)
        elif name == "sweep":
            sweep = _parse_sweep(entries)
        elif name == "measured":
            measured = _parse_measured(entries)
        else:
            raise MechanismFileError(f"unknown section [{name}]", lineno)
    if mechanism is None:
        raise MechanismFileError("file has no [mechanism] section")
    return ParsedMechanism(mechanism, materials, elements, sweep, measured)


def parse_mechanism(path) -> ParsedMechanism:
    """Parse a mechanism file; every error names its line and field."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise MechanismFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_lines(lines)


# ---------------------------------------------------------------------------
# canonical serialization (round-trip stable)

def _fmt(x):
    return repr(float(x))  # shortest exact round-trip form


def _fmt_placement(p: FramePlacement):
    r = ",".join(_fmt(c) for c in p.r)
    return f"r={r} theta={_fmt(p.theta_deg)}"


def serialize(parsed: ParsedMechanism) -> str:
    """Canonical text form; parse(serialize(x)) == x."""
    out = [FORMAT_HEADER, UNITS_HEADER, ""]

    out.append("[materials]")
    for name in sorted(parsed.materials):
        m = parsed.materials[name]
        line = f"material {name} E={_fmt(m.e_modulus)} nu={_fmt(m.nu)}"
        if m.g_modulus != m.e_modulus / (2.0 * (1.0 + m.nu)):
            line += f" G={_fmt(m.g_modulus)}"
        out.append(line)
    out.append("")

    out.append("[elements]")
    for name in sorted(parsed.elements):
        g = parsed.elements[name]
        if isinstance(g, HingeGeometry):
            out.append(f"hinge {name} material={g.material.name} r={_fmt(g.r)} "
                       f"t={_fmt(g.t)} w={_fmt(g.w)} h1={_fmt(g.h1)}")
        else:
            out.append(f"beam {name} material={g.material.name} l={_fmt(g.l)} "
                       f"w={_fmt(g.w)} s={_fmt(g.s)}")
    out.append("")

    elem_names = {id(g): n for n, g in parsed.elements.items()}
    seen = {}
    for limb, _ in parsed.mechanism.limbs:
        if limb.name in seen:
            continue
        seen[limb.name] = limb
        out.append(f"[limb {limb.name}]")
        for geom, placement in limb.members:
            out.append(f"member {elem_names[id(geom)]} {_fmt_placement(placement)}")
        out.append("")

    out.append("[mechanism]")
    out.append(f"reference {parsed.mechanism.reference}")
    for limb, placement in parsed.mechanism.limbs:
        out.append(f"limb {limb.name} {_fmt_placement(placement)}")
    out.append("")

    if parsed.sweep is not None:
        out.append("[sweep]")
        for name, (lo, hi, n) in parsed.sweep.parameters.items():
            out.append(f"vary {name} {_fmt(lo)} {_fmt(hi)} {n}")
        obj = parsed.sweep.objective
        if obj.rcc_height_target is not None:
            out.append(f"target rcc_height {_fmt(obj.rcc_height_target)}"
                       + (f" weight={_fmt(obj.weights['rcc'])}" if "rcc" in obj.weights else ""))
        if obj.stiffness_ratio_max:
            out.append("maximize stiffness_ratio"
                       + (f" weight={_fmt(obj.weights['ratio'])}" if "ratio" in obj.weights else ""))
        for axis, target in (obj.diag_stiffness_target or {}).items():
            out.append(f"target_k {axis} {_fmt(target)}"
                       + (f" weight={_fmt(obj.weights['diag'])}" if "diag" in obj.weights else ""))
        out.append("")

    if parsed.measured is not None:
        out.append("[measured]")
        for axis, value in parsed.measured.items():
            if isinstance(value, tuple):
                out.append(f"measured {axis} {_fmt(value[0])} {_fmt(value[1])}")
            else:
                out.append(f"measured {axis} {_fmt(value)}")
        out.append("")

    return "\n".join(out).rstrip() + "\n"
