from .errors import (
    QInfoError,
    InvalidDimensionError,
    UnsupportedDimensionError,
    NormalizationError,
    PositivityError,
    PartitionError,
    ParameterRangeError,
    SingularityError,
    StateFormatError,
    ConvergenceError,
)
from .su_basis import GeneratorBasis, StructureConstants, build_generators, structure_constants, star_product
from .qstate import (
    PartitionSpec,
    PureStateVector,
    DensityMatrix,
    BlochDecomposition,
    SchmidtDecomposition,
    from_pure,
    partial_trace,
    bloch_decompose,
    reconstruct,
    coherence_is_pure,
    von_neumann_entropy,
    schmidt_decompose,
    mutual_information,
    parse_density_matrix,
    format_density_matrix,
)
from .measures import (
    sep_norm,
    correlation_norm,
    geometric_entanglement,
    concurrence,
    binary_entropy,
    eof_from_concurrence,
    three_tangle,
)
from .optimize import MultistartResult, OptimizationReport, multistart_maximize
from .capacity import (
    SystemKind,
    CouplingSpec,
    canonical_hamiltonian,
    rate_two_qubit,
    rate_qutrit,
    rate_qutrit_triplets,
    rate_three_qubit,
    entropy_rate,
    rate_finite_difference,
    find_p0,
    maximize_rate,
)
from .fermion import (
    FockBasisState,
    NumberSector,
    LatticeModelSpec,
    FourModeParams,
    number_sector,
    jw_operator,
    hubbard_dimer_ground,
    dimer_entanglements,
    hubbard_trimer_ground,
    trimer_entanglements,
    maximize_partition_entanglement,
    four_mode_state,
    evolve_four_mode,
)
from .thermal_xx import (
    XXParams,
    ThermalState,
    thermal_state,
    thermal_concurrence,
    qd_cc,
    theorem_qd_eq_cc,
    monogamy,
    critical_temperature,
)
from .discord import (
    DiscordReport,
    WitnessReport,
    geometric_discord_2q,
    geometric_discord_mn,
    discord_lower_bound,
    werner_discord,
    bruteforce_geometric_discord,
    zero_discord_witness,
)

__all__ = [
    'QInfoError',
    'InvalidDimensionError',
    'UnsupportedDimensionError',
    'NormalizationError',
    'PositivityError',
    'PartitionError',
    'ParameterRangeError',
    'SingularityError',
    'StateFormatError',
    'ConvergenceError',
    'GeneratorBasis',
    'StructureConstants',
    'build_generators',
    'structure_constants',
    'star_product',
    'PartitionSpec',
    'PureStateVector',
    'DensityMatrix',
    'BlochDecomposition',
    'SchmidtDecomposition',
    'from_pure',
    'partial_trace',
    'bloch_decompose',
    'reconstruct',
    'coherence_is_pure',
    'von_neumann_entropy',
    'schmidt_decompose',
    'mutual_information',
    'parse_density_matrix',
    'format_density_matrix',
    'sep_norm',
    'correlation_norm',
    'geometric_entanglement',
    'concurrence',
    'binary_entropy',
    'eof_from_concurrence',
    'three_tangle',
    'MultistartResult',
    'OptimizationReport',
    'multistart_maximize',
    'SystemKind',
    'CouplingSpec',
    'canonical_hamiltonian',
    'rate_two_qubit',
    'rate_qutrit',
    'rate_qutrit_triplets',
    'rate_three_qubit',
    'entropy_rate',
    'rate_finite_difference',
    'find_p0',
    'maximize_rate',
    'FockBasisState',
    'NumberSector',
    'LatticeModelSpec',
    'FourModeParams',
    'number_sector',
    'jw_operator',
    'hubbard_dimer_ground',
    'dimer_entanglements',
    'hubbard_trimer_ground',
    'trimer_entanglements',
    'maximize_partition_entanglement',
    'four_mode_state',
    'evolve_four_mode',
    'XXParams',
    'ThermalState',
    'thermal_state',
    'thermal_concurrence',
    'qd_cc',
    'theorem_qd_eq_cc',
    'monogamy',
    'critical_temperature',
    'DiscordReport',
    'WitnessReport',
    'geometric_discord_2q',
    'geometric_discord_mn',
    'discord_lower_bound',
    'werner_discord',
    'bruteforce_geometric_discord',
    'zero_discord_witness',
]
