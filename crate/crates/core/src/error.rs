use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("expected an element of total degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: String },
    #[error("input is not foliated: {0}")]
    NotFoliated(String),
    #[error("1-form has a component along the leaf coframe (theta); only dx-components are allowed")]
    LeafComponent,
    #[error("vector field has a component tangent to the leaves; a section of E is required")]
    NotInE,
    #[error("structure is not transversal relative to the chart's complement (k != 0)")]
    NotTransversal,
    #[error("structure is not hamiltonian")]
    NotHamiltonian,
    #[error("structure is not tame")]
    NotTame,
    #[error("multivector has components outside the complement E")]
    NotEMultivector,
    #[error("closed form required: {0}")]
    NotClosed(String),
    #[error("function is not distinguished: {0}")]
    NotDistinguished(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
