from ._stochfv import (
    ConfigError,
    ConvergenceResult,
    LoadedConfig,
    NumericalAbort,
    Preset,
    RunReport,
    convergence_study,
    format_convergence,
    load_config,
    load_config_text,
    make_preset,
    preset_names,
    solve_and_write,
    solve_statistics,
)

__all__ = [
    "ConfigError",
    "ConvergenceResult",
    "LoadedConfig",
    "NumericalAbort",
    "Preset",
    "RunReport",
    "convergence_study",
    "format_convergence",
    "load_config",
    "load_config_text",
    "make_preset",
    "preset_names",
    "solve_and_write",
    "solve_statistics",
]
