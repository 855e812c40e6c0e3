//! Qubit channels as affine maps `x ↦ Λx + t` of the Bloch ball.

use alloc::format;
use alloc::string::String;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{mat_vec, norm, symmetric_eigenvalues, Mat3, Vec3};
use crate::state::{QubitState, BALL_SLACK};

/// Negative Choi eigenvalues down to this size count as zero.
pub const CHOI_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitChannel {
    label: String,
    linear: Mat3,
    translation: Vec3,
}

/// Outcome of the complete-positivity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpWitness {
    pub is_cptp: bool,
    /// Smallest eigenvalue of the Choi matrix.
    pub min_eigenvalue: f64,
}

type Mat2c = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Operator basis matched to the chart: `ρ = ½(I + x1 σz + x2 σx − x3 σy)`.
fn basis() -> [Mat2c; 4] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    [
        [[one, z], [z, one]],
        [[one, z], [z, -one]],
        [[z, one], [one, z]],
        [[z, c(0.0, 1.0)], [c(0.0, -1.0), z]],
    ]
}

impl QubitChannel {
    pub fn new(label: impl Into<String>, linear: Mat3, translation: Vec3) -> Self {
        Self {
            label: label.into(),
            linear,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new("identity", crate::linalg::identity3(), [0.0; 3])
    }

    /// The two-parameter family `Λ = diag(cos u, cos v, cos u cos v)`,
    /// `t = (0, 0, sin u sin v)`. Every member is completely positive and
    /// trace preserving; `u = 0` gives the unital members.
    pub fn rsw(u: f64, v: f64) -> Self {
        let (su, cu) = libm::sincos(u);
        let (sv, cv) = libm::sincos(v);
        Self::new(
            format!("rsw({u}, {v})"),
            [[cu, 0.0, 0.0], [0.0, cv, 0.0], [0.0, 0.0, cu * cv]],
            [0.0, 0.0, su * sv],
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn linear(&self) -> &Mat3 {
        &self.linear
    }

    pub fn translation(&self) -> &Vec3 {
        &self.translation
    }

    pub fn is_unital(&self) -> bool {
        self.translation == [0.0; 3]
    }

    /// `Λx + t`, rejected if it leaves the closed ball.
    pub fn apply(&self, s: &QubitState) -> Result<QubitState> {
        let lx = mat_vec(&self.linear, &s.cartesian());
        let image = [
            lx[0] + self.translation[0],
            lx[1] + self.translation[1],
            lx[2] + self.translation[2],
        ];
        let n = norm(&image);
        if !(n <= 1.0 + BALL_SLACK) {
            return Err(Error::Positivity {
                channel: self.label.clone(),
                norm: n,
            });
        }
        QubitState::from_cartesian(image)
    }

    /// `Σ_ab |a⟩⟨b| ⊗ Φ(|a⟩⟨b|)`.
    pub fn choi_matrix(&self) -> [[Complex64; 4]; 4] {
        let b = basis();
        // Images of the basis operators.
        let mut image = [[[c(0.0, 0.0); 2]; 2]; 4];
        for (mu, out) in image.iter_mut().enumerate() {
            let coeffs: [f64; 4] = if mu == 0 {
                [
                    1.0,
                    self.translation[0],
                    self.translation[1],
                    self.translation[2],
                ]
            } else {
                [
                    0.0,
                    self.linear[0][mu - 1],
                    self.linear[1][mu - 1],
                    self.linear[2][mu - 1],
                ]
            };
            for (nu, &k) in coeffs.iter().enumerate() {
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] += b[nu][i][j] * k;
                    }
                }
            }
        }
        let mut choi = [[c(0.0, 0.0); 4]; 4];
        for a in 0..2 {
            for bb in 0..2 {
                // |a⟩⟨bb| = ½ Σ_μ ⟨bb|B_μ|a⟩ B_μ
                for (mu, img) in image.iter().enumerate() {
                    let w = b[mu][bb][a] * 0.5;
                    for i in 0..2 {
                        for j in 0..2 {
                            choi[2 * a + i][2 * bb + j] += w * img[i][j];
                        }
                    }
                }
            }
        }
        choi
    }

    /// Positive semidefiniteness of the Choi matrix, through the real 8×8
    /// embedding `[[Re, −Im], [Im, Re]]` (same spectrum, each eigenvalue
    /// doubled).
    pub fn cptp_witness(&self) -> CptpWitness {
        let choi = self.choi_matrix();
        let mut real = [[0.0; 8]; 8];
        for i in 0..4 {
            for j in 0..4 {
                let z = choi[i][j];
                real[i][j] = z.re;
                real[i + 4][j + 4] = z.re;
                real[i][j + 4] = -z.im;
                real[i + 4][j] = z.im;
            }
        }
        let min = symmetric_eigenvalues(real)[0];
        CptpWitness {
            is_cptp: min >= -CHOI_TOLERANCE,
            min_eigenvalue: min,
        }
    }

    pub fn is_cptp(&self) -> bool {
        self.cptp_witness().is_cptp
    }
}

/// Parameters of the channel used in the published counterexample.
pub const PUBLISHED_U: f64 = 2.43564;
pub const PUBLISHED_V: f64 = 0.0289153;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Spherical;

    #[test]
    fn rsw_examples() {
        assert_eq!(
            QubitChannel::rsw(0.0, 0.0).linear(),
            QubitChannel::identity().linear()
        );
        assert!(QubitChannel::rsw(0.0, 0.0).is_unital());
        let ch = QubitChannel::rsw(0.0, 0.7);
        assert!(ch.is_unital());
        assert_eq!(ch.linear()[0][0], 1.0);
        let ch = QubitChannel::rsw(PUBLISHED_U, PUBLISHED_V);
        let l = ch.linear();
        assert!((l[0][0] + 0.760_993_85).abs() < 1e-8);
        assert!((l[1][1] - 0.999_581_98).abs() < 1e-8);
        assert!((l[2][2] + 0.760_675_75).abs() < 1e-8);
        assert!((ch.translation()[2] - 0.018_756_45).abs() < 1e-8);
        assert!(!ch.is_unital());
    }

    #[test]
    fn published_images() {
        let ch = QubitChannel::rsw(PUBLISHED_U, PUBLISHED_V);
        let s = QubitState::from_spherical(Spherical::new(0.646675, 2.51509, 5.89259)).unwrap();
        let img = ch.apply(&s).unwrap().spherical();
        assert!((img.r - 0.546143).abs() < 1e-5);
        assert!((img.theta - 0.752553).abs() < 1e-5);
        assert!((img.phi - 0.351613).abs() < 1e-5);
        assert!((img.r - s.radius()).abs() > 0.05);
    }

    #[test]
    fn identity_choi() {
        let w = QubitChannel::identity().cptp_witness();
        assert!(w.is_cptp && w.min_eigenvalue.abs() < 1e-15);
        let choi = QubitChannel::identity().choi_matrix();
        // |Ω⟩⟨Ω| with |Ω⟩ = |00⟩ + |11⟩.
        assert_eq!(choi[0][0], c(1.0, 0.0));
        assert_eq!(choi[0][3], c(1.0, 0.0));
        assert_eq!(choi[1][1], c(0.0, 0.0));
    }

    #[test]
    fn transpose_is_not_cp() {
        let t = QubitChannel::new(
            "transpose",
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
            [0.0; 3],
        );
        let w = t.cptp_witness();
        assert!(!w.is_cptp);
        assert!((w.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_error_names_channel() {
        let bad = QubitChannel::new(
            "stretch",
            [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            [0.0; 3],
        );
        let s = QubitState::from_cartesian([0.9, 0.0, 0.0]).unwrap();
        match bad.apply(&s) {
            Err(Error::Positivity { channel, .. }) => assert_eq!(channel, "stretch"),
            other => panic!("{other:?}"),
        }
    }
}
