"""Access to the bundled data files: the example mechanism, the measured
joint catalog, the reference stiffness matrix and the synthetic creep trace."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .materials import load_joint_catalog, load_materials
from .mechfile import parse_lines
from .spatial import SpatialMatrix6


def _data_text(name):
    return resources.files("flexmech.data").joinpath(name).read_text(encoding="utf-8")


def data_path(name):
    """Filesystem path of a bundled data file (packages install unzipped)."""
    return str(resources.files("flexmech.data").joinpath(name))


def load_small_rcc():
    """The bundled small remote-center-of-compliance example mechanism."""
    return parse_lines(_data_text("small_rcc.mech").splitlines())


def load_reference_stiffness() -> SpatialMatrix6:
    """Published 6x6 stiffness of the small RCC; regression fixture."""
    rows = []
    for line in _data_text("reference_stiffness.dat").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([float(tok) for tok in line.split()])
    return SpatialMatrix6(np.array(rows), "stiffness")


def load_bundled_joint_catalog():
    """Measured two-joint hinge records (read-only comparison data)."""
    return load_joint_catalog(_data_text("joint_catalog.dat").splitlines())


def load_bundled_materials():
    """Default material catalog (user-editable data file, not code)."""
    return load_materials(_data_text("materials.dat").splitlines(), "materials.dat")


def load_bundled_creep_samples():
    """Synthetic noiseless creep trace generated from (22 N, 19 N, 200 s)."""
    samples = []
    for line in _data_text("creep_22n.dat").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            t, f = line.split()
            samples.append((float(t), float(f)))
    return samples
