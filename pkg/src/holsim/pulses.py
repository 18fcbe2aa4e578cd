"""Pulse schedules for single-loop and dynamically corrected holonomic gates.

A schedule is an ordered list of piecewise drive segments.  Only the area
integral of each segment is contractual: the default envelope is square with
amplitude Omega_m, but any nonnegative profile with the same area gives the
same gate.

Single-qubit protocols (areas / phases, phi0 the base phase, g = gamma_g):

  plain loop:  (pi/2, pi/2) at phases (phi0, phi0 + pi - g)
  corrected:   (pi/4, pi/2, pi/4, pi/4, pi/2, pi/4) at phases
               (phi0, phi0 + pi/2, phi0,
                phi0 + pi - g, phi0 - g - pi/2, phi0 + pi - g)

i.e. each half-loop is split at its midpoint and a pi/2-area corrector is
inserted whose drive is a quarter turn out of phase; the two correctors'
dynamical phases cancel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import pi

import numpy as np

from .model import GateSpec, TwoQubitGateSpec

NHQC = "nhqc"
DCNHQC = "dcnhqc"
PROTOCOLS = (NHQC, DCNHQC)

BARE3 = "bare3"      # three-level system, dim 3
DFS1 = "dfs1"        # one logical qubit on three physical qubits, dim 8
DFS2 = "dfs2"        # two logical qubits on six physical qubits, dim 64

SQUARE = "square"
SIN_SQUARED = "sin_squared"
ENVELOPES = (SQUARE, SIN_SQUARED)


@dataclass(frozen=True)
class PulseSegment:
    """One drive segment: pulse area (radians), overall drive phase, and
    duration in units of 1/Omega_m.  For the square envelope the amplitude
    is area/duration."""

    area: float
    phase: float
    duration: float
    envelope: str = SQUARE

    def __post_init__(self):
        if not (np.isfinite(self.area) and self.area > 0):
            raise ValueError(f"segment area must be positive, got {self.area}")
        if not np.isfinite(self.phase):
            raise ValueError("segment phase must be finite")
        if not (np.isfinite(self.duration) and self.duration > 0):
            raise ValueError(f"segment duration must be positive, got {self.duration}")
        if self.envelope not in ENVELOPES:
            raise ValueError(f"unknown envelope {self.envelope!r}")


@dataclass(frozen=True)
class Schedule:
    """Immutable gate protocol on a given Hilbert space.

    For single-qubit systems each segment's `phase` is the absolute drive
    phase of the bright-aux coupling.  For the two-qubit system it is the
    common offset added to both drive phases varphi3 and varphi4.
    """

    segments: tuple[PulseSegment, ...]
    spec: GateSpec | TwoQubitGateSpec
    dim: int
    protocol: str
    system: str = BARE3
    omega_m: float = 1.0

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {self.protocol!r}")
        if self.system not in (BARE3, DFS1, DFS2):
            raise ValueError(f"unknown system {self.system!r}")
        if not (np.isfinite(self.omega_m) and self.omega_m > 0):
            raise ValueError("omega_m must be positive")

    @property
    def total_area(self) -> float:
        return sum(s.area for s in self.segments)

    @property
    def total_duration(self) -> float:
        return sum(s.duration for s in self.segments)

    def to_json(self) -> str:
        """Serialize the segment list for reproducibility and plotting."""
        payload = {
            "protocol": self.protocol,
            "system": self.system,
            "dim": self.dim,
            "omega_m": self.omega_m,
            "segments": [
                {"area": s.area, "phase": s.phase, "duration": s.duration,
                 "envelope": s.envelope}
                for s in self.segments
            ],
        }
        return json.dumps(payload, indent=2)


def _segment_phases(gamma_g: float, phi0: float, protocol: str) -> tuple[tuple[float, float], ...]:
    """(area, phase) pairs for a single-qubit protocol."""
    if protocol == NHQC:
        return ((pi/2, phi0), (pi/2, phi0 + pi - gamma_g))
    return ((pi/4, phi0),
            (pi/2, phi0 + pi/2),
            (pi/4, phi0),
            (pi/4, phi0 + pi - gamma_g),
            (pi/2, phi0 - gamma_g - pi/2),
            (pi/4, phi0 + pi - gamma_g))


def _make_segments(pairs, amplitude: float, envelope: str) -> tuple[PulseSegment, ...]:
    return tuple(PulseSegment(area=a, phase=p, duration=a/amplitude, envelope=envelope)
                 for a, p in pairs)


def build_nhqc(spec: GateSpec, omega_m: float = 1.0, envelope: str = SQUARE) -> Schedule:
    """Plain single-loop schedule: two pi/2-area halves, total area pi."""
    pairs = _segment_phases(spec.gamma_g, spec.phi0, NHQC)
    return Schedule(segments=_make_segments(pairs, omega_m, envelope),
                    spec=spec, dim=3, protocol=NHQC, system=BARE3, omega_m=omega_m)


def build_dcnhqc(spec: GateSpec, omega_m: float = 1.0, envelope: str = SQUARE) -> Schedule:
    """Dynamically corrected schedule: six segments, total area 2*pi."""
    pairs = _segment_phases(spec.gamma_g, spec.phi0, DCNHQC)
    return Schedule(segments=_make_segments(pairs, omega_m, envelope),
                    spec=spec, dim=3, protocol=DCNHQC, system=BARE3, omega_m=omega_m)


def build_single_qubit(spec: GateSpec, protocol: str, omega_m: float = 1.0,
                       envelope: str = SQUARE) -> Schedule:
    if protocol == NHQC:
        return build_nhqc(spec, omega_m, envelope)
    if protocol == DCNHQC:
        return build_dcnhqc(spec, omega_m, envelope)
    raise ValueError(f"unknown protocol {protocol!r}")


def build_encoded(spec: GateSpec, protocol: str = DCNHQC, omega_m: float = 1.0,
                  envelope: str = SQUARE) -> Schedule:
    """Same protocol driven through the three-physical-qubit exchange coupling.

    The logical restriction of the exchange Hamiltonian has the same form as
    the bare drive, so the segment list is identical; only the Hilbert space
    changes.
    """
    pairs = _segment_phases(spec.gamma_g, spec.phi0, protocol)
    return Schedule(segments=_make_segments(pairs, omega_m, envelope),
                    spec=spec, dim=8, protocol=protocol, system=DFS1, omega_m=omega_m)


def build_two_qubit(spec: TwoQubitGateSpec, protocol: str = DCNHQC, omega_m: float = 1.0,
                    envelope: str = SQUARE) -> Schedule:
    """Two-qubit schedule on the six-qubit exchange system (dim 64).

    The loop's geometric phase is pi, so the plain protocol is a single
    pi-area pulse (no phase jump between halves) and the corrected protocol
    inserts the usual two pi/2-area correctors.  Segment phases are common
    offsets applied to both drive phases; the drive amplitude is normalized
    so sqrt(g1^2 + g2^2) = omega_m.
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}")
    pairs = _segment_phases(pi, 0.0, protocol)
    return Schedule(segments=_make_segments(pairs, omega_m, envelope),
                    spec=spec, dim=64, protocol=protocol, system=DFS2, omega_m=omega_m)
