"""Two-photon coincidence interference toolkit.

Thin re-export of the compiled core.  The interesting objects are
JointSpectrum (the biphoton spectral amplitude families), BiphotonSystem
(spectrum + beam splitter), the rate functions (rate_spectral,
rate_timedomain, sweep) and the polarization-resolved layer
(PolarizedBiphoton, xi, eta, coincidence_rate_polarized).
"""

from ._core import (
    AnalyzerPair,
    BeamSplitter,
    BiphotonSystem,
    CoincidenceCurve,
    CoincidencePoint,
    ConfigError,
    DelayCoordinates,
    Geometry,
    InvalidBeamSplitterError,
    JointSpectrum,
    MixingCoefficients,
    NumericalConsistencyError,
    PairingSign,
    PolarizedBiphoton,
    PreconditionError,
    QuadratureError,
    SpectralDensity,
    SpectrumDomainError,
    SpectrumKind,
    UnsupportedDecompositionError,
    __version__,
    asymmetric_gaussian_rc,
    asymmetry_G,
    asymmetry_norm,
    coincidence_rate_polarized,
    component_rate,
    delays,
    eta,
    eta_curvature_at_zero,
    eval_F,
    eval_f,
    geometry_for_path_difference,
    mix_amplitudes,
    overlap_kernel,
    psi_split,
    rate_spectral,
    rate_timedomain,
    run_config_text,
    spectral_norm,
    sweep,
    symmetric_gaussian_rc,
    symmetrize,
    time_shift_identity_check,
    wavepacket,
    xi,
)

__all__ = [
    "AnalyzerPair",
    "BeamSplitter",
    "BiphotonSystem",
    "CoincidenceCurve",
    "CoincidencePoint",
    "ConfigError",
    "DelayCoordinates",
    "Geometry",
    "InvalidBeamSplitterError",
    "JointSpectrum",
    "MixingCoefficients",
    "NumericalConsistencyError",
    "PairingSign",
    "PolarizedBiphoton",
    "PreconditionError",
    "QuadratureError",
    "SpectralDensity",
    "SpectrumDomainError",
    "SpectrumKind",
    "UnsupportedDecompositionError",
    "__version__",
    "asymmetric_gaussian_rc",
    "asymmetry_G",
    "asymmetry_norm",
    "coincidence_rate_polarized",
    "component_rate",
    "delays",
    "eta",
    "eta_curvature_at_zero",
    "eval_F",
    "eval_f",
    "geometry_for_path_difference",
    "mix_amplitudes",
    "overlap_kernel",
    "psi_split",
    "rate_spectral",
    "rate_timedomain",
    "run_config_text",
    "spectral_norm",
    "sweep",
    "symmetric_gaussian_rc",
    "symmetrize",
    "time_shift_identity_check",
    "wavepacket",
    "xi",
]
