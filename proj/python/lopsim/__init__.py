"""Passive linear-optics interferometer simulator.

One circuit description, three exact semantics: classical field amplitudes,
multimode coherent states, and multimode Fock states. Single-photon detection
statistics reproduce normalized classical intensities on any circuit, while
pair correlations (anticorrelation, Hong-Ou-Mandel) separate quantum from
classical light.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
