"""Block finite-difference schemes for the periodic heat equation u_t = u_xx + F."""

from ._eisheat import (
    BlockGrid,
    BlowUpError,
    ConfigurationError,
    PreconditionError,
    StabilityReport,
    StencilOperator,
    alias_wavenumber,
    build_operator,
    closed_form_block2_eigs,
    local_kernel_weights,
    ode_order_selftest,
    reproduce_figure,
    run_convergence,
    scheme_names,
    solve,
    spectral_filter,
    stability_scan,
    stencil_cost,
    symbol_eigenvalues,
    truncation_order,
)

__all__ = [
    "BlockGrid",
    "BlowUpError",
    "ConfigurationError",
    "PreconditionError",
    "StabilityReport",
    "StencilOperator",
    "alias_wavenumber",
    "build_operator",
    "closed_form_block2_eigs",
    "local_kernel_weights",
    "ode_order_selftest",
    "reproduce_figure",
    "run_convergence",
    "scheme_names",
    "solve",
    "spectral_filter",
    "stability_scan",
    "stencil_cost",
    "symbol_eigenvalues",
    "truncation_order",
]
