//! Builders for integral group rings, Burnside rings and representation rings.

mod burnside;
mod cayley;
mod rep;
mod subgroups;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::abgroup::{AbGroupError, FinAbGroup};
use crate::augring::{AugmentedRing, RingError};

pub use burnside::{burnside_from_marks, burnside_ring, solve_marks};
pub use cayley::{abelian_elements, CayleyGroup};
pub use rep::{group_ring, group_ring_of_table, rep_ring_abelian, rep_ring_dihedral};
pub use subgroups::{
    all_subgroups, closure, enumerate_subgroups, table_of_marks, MarksMatrix, SubgroupClass, SubgroupClasses,
    DEFAULT_MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("marks system has no integral solution at class {class}")]
    NonIntegralStructure { class: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("malformed Cayley JSON: {0}")]
    Json(String),
    #[error("{0}")]
    BadParameter(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A group named in the shorthand grammar: `1`, `C<n>` products, `D<m>`, `S3`, `S4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Abelian(FinAbGroup),
    /// Dihedral group of order `2m`.
    Dihedral(usize),
    Symmetric(usize),
    /// An explicit Cayley table.
    Table(CayleyGroup),
}

impl GroupSpec {
    pub fn cayley(&self) -> CayleyGroup {
        match self {
            GroupSpec::Abelian(g) => CayleyGroup::from_abelian(g),
            GroupSpec::Dihedral(m) => CayleyGroup::dihedral(*m),
            GroupSpec::Symmetric(n) => CayleyGroup::symmetric(*n),
            GroupSpec::Table(g) => g.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Abelian(g) => abelian_order(g),
            GroupSpec::Dihedral(m) => 2 * m,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Table(g) => g.order(),
        }
    }
}

fn abelian_order(g: &FinAbGroup) -> usize {
    g.invariant_factors().iter().map(|&f| f as usize).product()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Abelian(g) => write!(f, "{g}"),
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Table(g) => write!(f, "table{}", g.order()),
        }
    }
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec, ConstructError> {
    let parse_err = |pos: usize, msg: &str| ConstructError::Parse { pos, msg: msg.to_string() };
    match s {
        "S3" => return Ok(GroupSpec::Symmetric(3)),
        "S4" => return Ok(GroupSpec::Symmetric(4)),
        _ => {}
    }
    if let Some(digits) = s.strip_prefix('D') {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(1, "expected a decimal m after 'D'"));
        }
        let m: usize = digits.parse().map_err(|_| parse_err(1, "m out of range"))?;
        if m < 3 {
            return Err(parse_err(1, "dihedral D<m> needs m ≥ 3"));
        }
        return Ok(GroupSpec::Dihedral(m));
    }
    if let Some(pos) = s.find(['D', 'S']) {
        return Err(parse_err(pos, "only cyclic factors may appear in products"));
    }
    s.parse::<FinAbGroup>().map(GroupSpec::Abelian).map_err(|e| match e {
        AbGroupError::Parse { pos, msg } => ConstructError::Parse { pos, msg },
        other => ConstructError::BadParameter(other.to_string()),
    })
}

/// Which family of rings to build from a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    GroupRing,
    Burnside,
    Rep,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GroupRing => "group-ring",
            Family::Burnside => "burnside",
            Family::Rep => "rep",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ConstructError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "group-ring" => Ok(Family::GroupRing),
            "burnside" => Ok(Family::Burnside),
            "rep" => Ok(Family::Rep),
            other => Err(ConstructError::BadParameter(format!("unknown family {other:?}"))),
        }
    }
}

/// Builds the ring of `family` attached to `group`; the ring is named `family:group`.
pub fn build_ring(family: Family, group: &GroupSpec, max_order: usize) -> Result<AugmentedRing, ConstructError> {
    let ring = match (family, group) {
        (Family::GroupRing, GroupSpec::Abelian(g)) => group_ring(g),
        (Family::GroupRing, GroupSpec::Table(t)) if t.is_abelian() => group_ring_of_table(t),
        (Family::GroupRing, _) => {
            return Err(ConstructError::Unsupported(format!("group ring of non-abelian {group} is not commutative")))
        }
        (Family::Burnside, g) => burnside_ring(&g.cayley(), max_order)?,
        (Family::Rep, GroupSpec::Abelian(g)) => rep_ring_abelian(g),
        (Family::Rep, GroupSpec::Dihedral(m)) => rep_ring_dihedral(*m)?,
        (Family::Rep, GroupSpec::Symmetric(3)) => rep_ring_dihedral(3)?,
        (Family::Rep, _) => {
            return Err(ConstructError::Unsupported(format!(
                "representation ring of {group}: only abelian and dihedral groups are supported"
            )))
        }
    };
    Ok(ring.with_name(format!("{family}:{group}")))
}
