"""Detection of passive MIMO eavesdroppers from local-oscillator leakage.

Layers, bottom up:

``specfun``    Marcum Q, incomplete gamma, 2F1, Gaussian tail (+inverses).
``randmat``    complex Gaussian sampling, Wishart trace/eigenvalue laws.
``model``      network config, channels, leakage tones, observations.
``detect``     energy detector, matched filter, two GLRTs, theory curves.
``rates``      secrecy/leakage rates, waterfilling, AN split, fusion.
``adversary``  Eve's placement and antenna-count tradeoff.
``harness``    seeded Monte Carlo experiments with CSV output.
"""

from . import adversary, detect, harness, model, randmat, rates, specfun
from .errors import AccuracyWarning, ConfigurationError, NumericError
from .model import ChannelSet, NetworkConfig, ObservationMatrix

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning",
    "ChannelSet",
    "ConfigurationError",
    "NetworkConfig",
    "NumericError",
    "ObservationMatrix",
    "adversary",
    "detect",
    "harness",
    "model",
    "randmat",
    "rates",
    "specfun",
]
