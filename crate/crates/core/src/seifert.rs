//! Integer basis changes on the two boundary tori of a Seifert fibered
//! piece, in the `(f, g)` = (fiber, meridian) basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 2×2 integer matrix acting on coordinate columns `(a, b)` meaning
/// `a·f + b·g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: Curve) -> Curve {
        let m = self.0;
        Curve {
            f: m[0][0] * v.f + m[0][1] * v.g,
            g: m[1][0] * v.f + m[1][1] * v.g,
        }
    }

    /// `self · other`, i.e. `other` first.
    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let (a, b) = (self.0, other.0);
        let mut out = [[0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    /// `[[1, w], [0, 1]]`: fixes `f`, sends `g` to `g + w·f`.
    pub fn shear(w: i64) -> Mat2 {
        Mat2([[1, w], [0, 1]])
    }
}

/// A curve class `f·[fiber] + g·[meridian]` on a boundary torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub f: i64,
    pub g: i64,
}

impl Curve {
    pub const FIBER: Curve = Curve { f: 1, g: 0 };
    pub const MERIDIAN: Curve = Curve { f: 0, g: 1 };

    /// Algebraic intersection number with the standard skew form.
    pub fn intersection(self, other: Curve) -> i64 {
        self.f * other.g - self.g * other.f
    }
}

/// Coordinates of a longitude `λ = α·f + β·g` and meridian `μ = δ·f + γ·g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AttachData {
    pub alpha: i64,
    pub beta: i64,
    pub delta: i64,
    pub gamma: i64,
}

impl AttachData {
    pub fn new(alpha: i64, beta: i64, delta: i64, gamma: i64) -> Result<AttachData> {
        let a = AttachData {
            alpha,
            beta,
            delta,
            gamma,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn det(&self) -> i64 {
        self.alpha * self.gamma - self.beta * self.delta
    }

    /// `λ, μ` must form a basis and `λ` must meet the fiber.
    pub fn validate(&self) -> Result<()> {
        if self.det().abs() != 1 {
            return Err(Error::InvalidAttachData(format!(
                "alpha*gamma - beta*delta = {}, expected 1 or -1",
                self.det()
            )));
        }
        if self.beta == 0 {
            return Err(Error::InvalidAttachData("beta = 0: the longitude misses the fiber".into()));
        }
        Ok(())
    }

    pub fn longitude(&self) -> Curve {
        Curve {
            f: self.alpha,
            g: self.beta,
        }
    }

    pub fn meridian(&self) -> Curve {
        Curve {
            f: self.delta,
            g: self.gamma,
        }
    }

    /// The same knot exterior attached to the second torus after a
    /// `w`-fold twist: `λ₂ = λ + βw·f`, `μ₂ = μ + γw·f`.
    pub fn twisted(&self, w: i64) -> AttachData {
        AttachData {
            alpha: self.alpha + self.beta * w,
            beta: self.beta,
            delta: self.delta + self.gamma * w,
            gamma: self.gamma,
        }
    }
}

/// A map between two boundary tori: `matrices[i]` carries torus `i` to torus
/// `pairing[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMap {
    pub pairing: [usize; 2],
    pub matrices: [Mat2; 2],
}

impl BoundaryMap {
    pub fn identity() -> BoundaryMap {
        BoundaryMap {
            pairing: [0, 1],
            matrices: [Mat2::IDENTITY; 2],
        }
    }

    pub fn apply(&self, torus: usize, c: Curve) -> (usize, Curve) {
        (self.pairing[torus], self.matrices[torus].apply(c))
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &BoundaryMap) -> BoundaryMap {
        let mut pairing = [0; 2];
        let mut matrices = [Mat2::IDENTITY; 2];
        for t in 0..2 {
            let mid = self.pairing[t];
            pairing[t] = next.pairing[mid];
            matrices[t] = next.matrices[mid].mul(&self.matrices[t]);
        }
        BoundaryMap { pairing, matrices }
    }

    pub fn is_unimodular(&self) -> bool {
        self.matrices.iter().all(|m| m.det().abs() == 1)
    }
}

/// The `w`-fold twist alone: each torus maps to itself, `f` fixed, `g`
/// shifted by `±w·f`.
pub fn twist(w: i64) -> BoundaryMap {
    BoundaryMap {
        pairing: [0, 1],
        matrices: [Mat2::shear(w), Mat2::shear(-w)],
    }
}

/// Interchanges the tori: `f₁ ↦ f₂`, `g₁ ↦ g₂ + w·f₂`, `f₂ ↦ f₁`,
/// `g₂ ↦ g₁ − w·f₁`.
pub fn build_swap(w: i64) -> BoundaryMap {
    BoundaryMap {
        pairing: [1, 0],
        matrices: [Mat2::shear(w), Mat2::shear(-w)],
    }
}

/// Whether `build_swap(w)` exchanges `(λ₁, μ₁)` on the first torus with the
/// twisted data `(λ₂, μ₂)` on the second.
pub fn check_transposition(a: &AttachData, w: i64) -> Result<bool> {
    a.validate()?;
    let swap = build_swap(w);
    let b = a.twisted(w);
    let ok = swap.apply(0, a.longitude()) == (1, b.longitude())
        && swap.apply(0, a.meridian()) == (1, b.meridian())
        && swap.apply(1, b.longitude()) == (0, a.longitude())
        && swap.apply(1, b.meridian()) == (0, a.meridian());
    Ok(ok && swap.is_unimodular())
}

/// `|β|`, the unsigned intersection of the longitude with the fiber.
pub fn fiber_intersection(a: &AttachData) -> i64 {
    a.beta.abs()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub w: i64,
    pub cases: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub bound: i64,
    pub rows: Vec<SweepRow>,
    pub failures: Vec<(AttachData, i64)>,
    pub flag: bool,
}

/// Every valid `AttachData` with entries in `[-bound, bound]`.
pub fn attach_data_up_to(bound: i64) -> Vec<AttachData> {
    let r = -bound..=bound;
    let mut out = Vec::new();
    for alpha in r.clone() {
        for beta in r.clone() {
            for delta in r.clone() {
                for gamma in r.clone() {
                    let a = AttachData {
                        alpha,
                        beta,
                        delta,
                        gamma,
                    };
                    if a.validate().is_ok() {
                        out.push(a);
                    }
                }
            }
        }
    }
    out
}

/// Runs [`check_transposition`] on every valid attach datum with entries
/// bounded by `bound`, for every `w` in `[-bound, bound]`.
pub fn sweep(bound: i64) -> SweepReport {
    let data = attach_data_up_to(bound);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for w in -bound..=bound {
        let mut passed = 0;
        for a in &data {
            if check_transposition(a, w).unwrap_or(false) {
                passed += 1;
            } else {
                failures.push((*a, w));
            }
        }
        rows.push(SweepRow {
            w,
            cases: data.len(),
            passed,
        });
    }
    SweepReport {
        bound,
        flag: failures.is_empty(),
        rows,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_twist_is_pure_swap() {
        let s = build_swap(0);
        assert_eq!(s.pairing, [1, 0]);
        assert_eq!(s.matrices, [Mat2::IDENTITY; 2]);
    }

    #[test]
    fn unit_twist_moves_meridian() {
        let s = build_swap(1);
        assert_eq!(s.apply(0, Curve::MERIDIAN), (1, Curve { f: 1, g: 1 }));
        assert_eq!(s.apply(0, Curve::FIBER), (1, Curve::FIBER));
        assert_eq!(s.apply(1, Curve::MERIDIAN), (0, Curve { f: -1, g: 1 }));
    }

    #[test]
    fn swap_is_an_involution() {
        for w in -5..=5 {
            assert_eq!(build_swap(w).then(&build_swap(w)), BoundaryMap::identity());
        }
    }

    #[test]
    fn opposite_swaps_leave_a_double_twist() {
        for w in -5..=5 {
            let both = build_swap(w).then(&build_swap(-w));
            assert_eq!(both.pairing, [0, 1]);
            assert_eq!(both.matrices, [Mat2::shear(2 * w), Mat2::shear(-2 * w)]);
        }
    }

    #[test]
    fn twist_fixes_fiber() {
        let t = twist(3);
        for torus in 0..2 {
            let (to, f) = t.apply(torus, Curve::FIBER);
            assert_eq!((to, f), (torus, Curve::FIBER));
            let (_, g) = t.apply(torus, Curve::MERIDIAN);
            assert_eq!(g.g, 1);
            assert_eq!(g.f.abs(), 3);
        }
    }

    #[test]
    fn transposition_examples() {
        let a = AttachData::new(1, 1, 0, 1).unwrap();
        assert!(check_transposition(&a, 0).unwrap());
        assert!(check_transposition(&a, 3).unwrap());
        assert!(AttachData::new(1, 0, 0, 1).is_err());
        assert!(AttachData::new(2, 1, 1, 2).is_err());
        let bad = AttachData {
            alpha: 1,
            beta: 0,
            delta: 0,
            gamma: 1,
        };
        assert!(check_transposition(&bad, 1).is_err());
        assert_eq!(fiber_intersection(&bad), 0);
    }

    #[test]
    fn fiber_intersection_is_beta() {
        let a = AttachData::new(2, 3, 1, 2).unwrap();
        assert_eq!(fiber_intersection(&a), 3);
        assert_eq!(a.longitude().intersection(Curve::FIBER).abs(), 3);
    }

    #[test]
    fn small_sweep() {
        let r = sweep(2);
        assert!(r.flag);
        assert_eq!(r.rows.len(), 5);
    }
}
