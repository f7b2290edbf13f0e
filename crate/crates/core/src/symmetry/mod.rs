//! Symmetry unitaries, symmetry defects and structural form templates.

mod defect;
mod forms;
mod unitary;

pub use defect::{
    check_symmetry, check_symmetry_with, default_basis, env_invariance_defect, symmetry_defect, symmetry_defect_full,
    SymmetryReport,
};
pub use forms::{
    form_violation, form_violation_series, write_violations_csv, Constraint, FormTemplate, TemplateMatch, Term,
    BUILTIN_TEMPLATES,
};
pub use unitary::{
    axis_frame, bloch_operator, frame_vectors, orthonormal_frame, realize, Side, UnitarySpec, UNITARY_TOLERANCE,
};
