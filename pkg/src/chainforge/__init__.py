"""Linear-depth circuit scheduling for nearest-neighbor chains.

The package builds staged schedules for two-qubit-gate skeletons, Fourier
transforms, GF(2) linear reversible circuits, 11-stage stabilizer
decompositions, and CSS encode/syndrome blocks, all without helper wires.
Verification backends (dense statevector, GF(2) action, Pauli tableau) and
depth lower-bound queries live alongside the generators.
"""

from __future__ import annotations

from .bounds import (
    AuditReport,
    AuditWindow,
    BoundArch,
    BoundQuery,
    LoopWitness,
    LowerBound,
    Model,
    brute_force_min_depth,
    classify_layers,
    grid_loop_triangles,
    has_triangle,
    lower_bound,
    ratio_report,
    stage_audit,
)
from .core import (
    ArchKind,
    Architecture,
    ChainNotFoundError,
    Circuit,
    Gate,
    GateKind,
    ParseError,
    ScheduledCircuit,
    ValidationReport,
    Violation,
    cnot,
    cphase,
    cz,
    emit_architecture,
    emit_circuit,
    embed_chain,
    generic2,
    generic_depth,
    h,
    invert_permutation,
    is_two_qubit,
    layers,
    p,
    parse_architecture,
    parse_circuit,
    prune_trailing_swap_layers,
    route_permutation,
    swap,
    swap_flow_map,
    to_qasm,
    two_qubit_layer_count,
    validate_on,
)
from .css import (
    CssDepthReport,
    CssGate,
    CssMode,
    CssSpec,
    css_depth_report,
    css_flat,
    css_schedule_lnn,
    emit_css,
    level_contents,
    parse_css,
    steane_syndrome,
)
from .linsynth import (
    GF2Matrix,
    GaussJordanTrace,
    RearrangedParts,
    SingularMatrixError,
    emit_gf2,
    expand_circuit_to_cnot,
    expand_to_cnot,
    gauss_jordan,
    parse_gf2,
    rearrange,
    schedule_parts,
    synthesize_lnn,
)
from .oracle import (
    MAX_SIM_WIRES,
    MAX_UNITARY_WIRES,
    bit_reversal_permutation,
    circuit_unitary,
    dft_matrix,
    gf2_action,
    permutation_matrix,
    simulate,
    states_equiv,
    unitary_equiv,
)
from .qft import QftSpec, aqft_lnn, qft_flat, qft_lnn
from .skeleton import (
    SkeletonSpec,
    StagePlan,
    all_pairs,
    emit_skeleton,
    full_reversal,
    lnn_pattern_preserved,
    n_stages,
    parse_skeleton,
    schedule_lnn,
    stage_assignment,
    stage_of,
    stage_pairs,
    staged_schedule,
)
from .stabilizer import (
    PauliTableau,
    StageDecomposition,
    emit_stab,
    parse_stab,
    random_decomposition,
    schedule_stabilizer,
    stabilizer_flat,
    tableau_equiv,
    tableau_of,
)

__version__ = "0.1.0"
