"""Covariant two-body bound states: RMS kinematics, hyperangular functions,
radial spectra and the induced Lorentz representation."""

__version__ = "0.1.0"
