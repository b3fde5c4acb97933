use thiserror::Error;

use crate::collineation::ObjType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{n}) exceeds the table bound of {bound} elements")]
    TableBound { p: u64, n: u32, bound: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the zero vector is not a projective object")]
    ZeroTriple,
    #[error("join/meet of an object with itself is undefined")]
    IdenticalArguments,
    #[error("psi_t requires t != 0")]
    ZeroScalar,
    #[error("theta must be nonzero")]
    ZeroTheta,
    #[error("coordinates must all be nonzero, got {0}")]
    ZeroCoordinate(String),
    #[error("mu is only defined on Type III objects; {object} has Type {found:?}")]
    NotTypeIII { object: String, found: ObjType },
    #[error("projection from T of T itself is undefined")]
    ProjectFromSelf,
    #[error("the splash of m_T onto itself is undefined")]
    SplashOfAxis,
    #[error("vertex {0} lies on m_T; projection onto m_T is degenerate")]
    VertexOnAxis(String),
    #[error("vertex {0} lies in the plane being projected")]
    VertexInPlane(String),
    #[error("point set is not an element of orb(S_T)")]
    NotAnOrbit,
    #[error("orbit class with representative {rep} mixes point types")]
    InconsistentClass { rep: String },
    #[error("the Figueroa construction requires q a prime power with q > 2 (got q = {0})")]
    SmallOrder(u64),
    #[error("check requires q even (got q = {0})")]
    OddOrder(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
