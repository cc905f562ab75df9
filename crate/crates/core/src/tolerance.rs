/// Numerical thresholds shared by the transforms and the verification battery.
///
/// Defaults depend on the matrix dimension: a single 4x4 momentum mode is held to
/// tighter limits than a 4N lattice operator.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct Tolerances {
    /// Smallest admissible |eigenvalue| for sign and square-root functions.
    pub gap_min: f64,
    pub hermitian: f64,
    pub unitary: f64,
    pub block_diagonal: f64,
    pub reduction: f64,
    /// Relative width of a degeneracy group.
    pub degeneracy: f64,
    /// `[E, O]` threshold, scaled by `|E| |O|`.
    pub commute_rel: f64,
}

impl Tolerances {
    pub const MODE: Tolerances = Tolerances {
        gap_min: 1e-8,
        hermitian: 1e-10,
        unitary: 1e-10,
        block_diagonal: 1e-10,
        reduction: 1e-10,
        degeneracy: 1e-9,
        commute_rel: 1e-10,
    };

    pub const LATTICE: Tolerances = Tolerances {
        gap_min: 1e-8,
        hermitian: 1e-8,
        unitary: 1e-8,
        block_diagonal: 1e-8,
        reduction: 1e-8,
        degeneracy: 1e-9,
        commute_rel: 1e-10,
    };

    pub fn for_dim(dim: usize) -> Tolerances {
        if dim <= 4 {
            Self::MODE
        } else {
            Self::LATTICE
        }
    }

    /// Overrides a single threshold by name; returns `false` for unknown names.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "gap_min" => &mut self.gap_min,
            "hermitian" | "herm" => &mut self.hermitian,
            "unitary" => &mut self.unitary,
            "block_diagonal" | "blockdiag" => &mut self.block_diagonal,
            "reduction" => &mut self.reduction,
            "degeneracy" | "degen" => &mut self.degeneracy,
            "commute_rel" | "commute" => &mut self.commute_rel,
            _ => return false,
        };
        *slot = value;
        true
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::LATTICE
    }
}
