use core::fmt;
use core::str::FromStr;

use alloc::format;
use alloc::string::{String, ToString};

use crate::hamiltonian::{Backend, ScenarioKind, ScenarioSpec};
use crate::{Error, Result};

/// Sign of the SU(2) rotation exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Su2Sign {
    /// The corrected sign: a genuine FW transformation.
    Plus,
    /// The original sign: block-diagonalizes a different Hamiltonian and breaks
    /// the reduction condition.
    Minus,
}

/// Every transform the crate knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    U0Free,
    FwCommuting,
    Eriksen,
    Stepwise { steps: usize },
    PerturbativeElectrostatic,
    PerturbativeGravity,
    Su2Susy(Su2Sign),
    Ek,
    /// EK followed by its FW correction.
    EkToFw,
    Melosh,
    /// Melosh followed by its FW correction.
    MeloshToFw,
    Heidenreich,
}

/// How a transform is classified against the reduction condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Expectation {
    /// Exact FW transformation: must pass the reduction check.
    Fw,
    /// Truncated FW series: must pass within its truncation tolerance.
    FwWithinTruncation,
    /// Block-diagonalizes but is not FW: must fail the reduction check.
    NotFw,
    /// Neither claim is made (finite-step iterations).
    Approximate,
}

impl Method {
    /// One representative of every method, for listings.
    pub const CATALOG: [Method; 13] = [
        Method::U0Free,
        Method::FwCommuting,
        Method::Eriksen,
        Method::Stepwise { steps: 3 },
        Method::PerturbativeElectrostatic,
        Method::PerturbativeGravity,
        Method::Su2Susy(Su2Sign::Plus),
        Method::Su2Susy(Su2Sign::Minus),
        Method::Ek,
        Method::EkToFw,
        Method::Melosh,
        Method::MeloshToFw,
        Method::Heidenreich,
    ];

    /// Family name without parameters.
    pub fn family(self) -> &'static str {
        match self {
            Method::U0Free => "u0-free",
            Method::FwCommuting => "fw-commuting",
            Method::Eriksen => "eriksen",
            Method::Stepwise { .. } => "stepwise",
            Method::PerturbativeElectrostatic => "perturbative-electrostatic",
            Method::PerturbativeGravity => "perturbative-gravity",
            Method::Su2Susy(_) => "su2-susy",
            Method::Ek => "ek",
            Method::EkToFw => "ek-to-fw",
            Method::Melosh => "melosh",
            Method::MeloshToFw => "melosh-to-fw",
            Method::Heidenreich => "heidenreich",
        }
    }

    pub fn expectation(self) -> Expectation {
        match self {
            Method::U0Free
            | Method::FwCommuting
            | Method::Eriksen
            | Method::EkToFw
            | Method::MeloshToFw
            | Method::Su2Susy(Su2Sign::Plus) => Expectation::Fw,
            Method::PerturbativeElectrostatic | Method::PerturbativeGravity => {
                Expectation::FwWithinTruncation
            }
            Method::Ek | Method::Melosh | Method::Heidenreich | Method::Su2Susy(Su2Sign::Minus) => {
                Expectation::NotFw
            }
            Method::Stepwise { .. } => Expectation::Approximate,
        }
    }

    /// Rejects scenario/method pairings that cannot be evaluated at all.
    pub fn check_applicable(self, spec: &ScenarioSpec) -> Result<()> {
        use ScenarioKind::*;
        let ok = match self {
            Method::FwCommuting | Method::Eriksen => true,
            Method::Stepwise { steps } => (1..=3).contains(&steps),
            Method::U0Free | Method::EkToFw => spec.kind == Free,
            Method::Melosh | Method::MeloshToFw => {
                spec.kind == Free && spec.backend == Backend::MomentumMode
            }
            Method::PerturbativeElectrostatic => spec.kind == Electrostatic,
            Method::PerturbativeGravity | Method::Heidenreich => spec.kind == Gravity,
            Method::Su2Susy(_) => spec.kind == SusyFields,
            // J anticommutes with beta and alpha but not with a scalar potential or
            // the pseudo-vector couplings of the susy scenario.
            Method::Ek => matches!(spec.kind, Free | Gravity),
        };
        if ok {
            Ok(())
        } else if let Method::Stepwise { steps } = self {
            Err(Error::Unsupported(format!("stepwise depth must be 1, 2 or 3, got {steps}")))
        } else {
            Err(Error::Unsupported(format!(
                "{self} does not apply to the {} scenario on the {} backend",
                spec.kind.as_str(),
                match spec.backend {
                    Backend::MomentumMode => "momentum-mode",
                    Backend::Lattice => "lattice",
                }
            )))
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Stepwise { steps } => write!(f, "stepwise({steps})"),
            Method::Su2Susy(Su2Sign::Plus) => f.write_str("su2-susy(plus)"),
            Method::Su2Susy(Su2Sign::Minus) => f.write_str("su2-susy(minus)"),
            other => f.write_str(other.family()),
        }
    }
}

/// Unknown or malformed transform name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMethodError(pub String);

impl fmt::Display for ParseMethodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown transform `{}`", self.0)
    }
}

impl core::error::Error for ParseMethodError {}

impl FromStr for Method {
    type Err = ParseMethodError;

    /// Accepts the display form, e.g. `eriksen`, `stepwise(2)`, `su2-susy(minus)`.
    /// Bare `stepwise` means three steps and bare `su2-susy` the plus sign.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let err = || ParseMethodError(s.to_string());
        let name = s.trim();
        let (family, arg) = match name.split_once('(') {
            Some((fam, rest)) => (fam.trim(), Some(rest.strip_suffix(')').ok_or_else(err)?.trim())),
            None => (name, None),
        };
        let method = match (family, arg) {
            ("stepwise", None) => Method::Stepwise { steps: 3 },
            ("stepwise", Some(n)) => Method::Stepwise { steps: n.parse().map_err(|_| err())? },
            ("su2-susy", None | Some("plus")) => Method::Su2Susy(Su2Sign::Plus),
            ("su2-susy", Some("minus")) => Method::Su2Susy(Su2Sign::Minus),
            (_, Some(_)) => return Err(err()),
            (fam, None) => Method::CATALOG
                .iter()
                .copied()
                .find(|m| m.family() == fam && !matches!(m, Method::Stepwise { .. } | Method::Su2Susy(_)))
                .ok_or_else(err)?,
        };
        Ok(method)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{FieldProfile, Lattice1D};

    #[test]
    fn names_round_trip() {
        for m in Method::CATALOG {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert_eq!("stepwise(2)".parse::<Method>().unwrap(), Method::Stepwise { steps: 2 });
        assert_eq!("su2-susy".parse::<Method>().unwrap(), Method::Su2Susy(Su2Sign::Plus));
    }

    #[test]
    fn unknown_names_rejected() {
        for bad in ["bogus", "eriksen(1)", "su2-susy(up)", "stepwise(x)", "stepwise(2"] {
            assert!(bad.parse::<Method>().is_err(), "{bad}");
        }
    }

    #[test]
    fn applicability() {
        let lat = Lattice1D::new(8, 4.0).unwrap();
        let mode = ScenarioSpec::free_mode(1.0, [0.1, 0.2, 0.3]);
        let free_lat = ScenarioSpec::free_lattice(1.0, lat);
        let elec = ScenarioSpec::electrostatic(1.0, 0.1, FieldProfile::constant(1.0), lat);
        assert!(Method::Melosh.check_applicable(&mode).is_ok());
        assert!(Method::Melosh.check_applicable(&free_lat).is_err());
        assert!(Method::Ek.check_applicable(&elec).is_err());
        assert!(Method::Stepwise { steps: 4 }.check_applicable(&elec).is_err());
        assert!(Method::Su2Susy(Su2Sign::Plus).check_applicable(&elec).is_err());
        assert!(Method::Eriksen.check_applicable(&elec).is_ok());
    }
}
