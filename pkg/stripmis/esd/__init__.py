"""Extended strip decompositions: data model, validation, atoms and particles."""
from stripmis.esd.atoms import (
    Atom,
    Particle,
    ParticleTemplate,
    add_isolated_components,
    atom_size_bound,
    atoms,
    boundary,
    line_graph_esd,
    particle_membership_counts,
    particle_size_bound,
    particles,
    potato,
    restrict,
    terminal_extension,
)
from stripmis.esd.io import ESDDocument, ESDFormatError, esd_from_dict, esd_to_dict, read_esd, write_esd
from stripmis.esd.model import EtaMap, ExtendedStripDecomposition, PatternEdge, PatternGraph
from stripmis.esd.rungs import RungBudgetExceeded, check_frame, check_semi_tame, check_tame, e_rungs, tilde_eta
from stripmis.esd.validate import (
    ESDValidationError,
    ValidationReport,
    Violation,
    validate_elementary,
    validate_esd,
    validate_strip_structure,
)
