"""Python bindings for the unique-subset-sum solver."""

from ._uss import (
    ColumnStats,
    ContractViolation,
    CycleReport,
    Decision,
    Error,
    InputError,
    Instance,
    Outcome,
    ProbeReport,
    Search,
    SolutionReport,
    additive_energy,
    analyze,
    clear_bits,
    compute_lookahead,
    density,
    enumerate_split,
    generate,
    oracle_decide,
    oracle_sumset,
    probe,
    read_instance,
    solve,
    verify_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
