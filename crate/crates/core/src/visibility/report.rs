use serde::{Deserialize, Serialize};

use super::{Analysis, Certificate, VisibilityProblem};
use crate::hbs::SignRegime;
use crate::rational::fmt_q;
use crate::sullivan::ElimSign;

pub const REPORT_SCHEMA: &str = "ratvis.report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeStatus {
    Visible,
    NotVisible,
    /// homology not computed in this degree
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: u32,
    pub v_g_dim: usize,
    /// `dim π_i(aut_1(G/U)) ⊗ Q`
    pub homotopy_dim: usize,
    /// rank of `H^i(Q(μ̃̃))`
    pub rank: usize,
    pub status: DegreeStatus,
    /// basis of the image, written over the generators of `V_G`
    pub image: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologySummary {
    pub poincare: String,
    pub dims: Vec<usize>,
    pub closed: bool,
    pub formal_dimension: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateReport {
    Decomposable {
        degree: u32,
        class: String,
        restriction: String,
    },
    Congruence {
        degree: u32,
        class: String,
        partner: String,
        scale: String,
        dual: Vec<(String, String)>,
    },
    Inconclusive {
        degree: u32,
        class: String,
    },
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        match c {
            Certificate::Decomposable { class, degree, restriction } => CertificateReport::Decomposable {
                degree: *degree,
                class: class.clone(),
                restriction: restriction.clone(),
            },
            Certificate::Congruence {
                class,
                partner,
                degree,
                scale,
                dual,
            } => CertificateReport::Congruence {
                degree: *degree,
                class: class.clone(),
                partner: partner.clone(),
                scale: fmt_q(scale),
                dual: dual.iter().map(|(l, q)| (l.clone(), fmt_q(q))).collect(),
            },
            Certificate::Inconclusive { class, degree } => CertificateReport::Inconclusive {
                degree: *degree,
                class: class.clone(),
            },
        }
    }
}

impl CertificateReport {
    pub fn degree(&self) -> u32 {
        match self {
            CertificateReport::Decomposable { degree, .. }
            | CertificateReport::Congruence { degree, .. }
            | CertificateReport::Inconclusive { degree, .. } => *degree,
        }
    }

    pub fn certifies(&self) -> bool {
        !matches!(self, CertificateReport::Inconclusive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisibilityReport {
    pub schema: String,
    pub name: String,
    pub group: String,
    pub subgroup: String,
    pub n_g: Vec<u32>,
    pub vd: Vec<u32>,
    /// degrees where the image is nonzero, possibly short of all of `(V_G)^i`
    pub detected_degrees: Vec<u32>,
    pub degrees: Vec<DegreeReport>,
    /// nonzero `(i, dim π_i(aut_1(G/U)) ⊗ Q)`
    pub homotopy: Vec<(u32, usize)>,
    pub cohomology: CohomologySummary,
    pub small_model: Vec<String>,
    pub eliminated: Vec<(String, String)>,
    pub certificates: Vec<CertificateReport>,
    pub regime: SignRegime,
    pub elimination_sign: ElimSign,
}

impl VisibilityReport {
    pub(crate) fn build(p: &VisibilityProblem, a: &Analysis, certificates: &[Certificate]) -> Self {
        let computed = a.homology.degrees.iter().map(|d| d.degree).max().unwrap_or(0);
        let mut degrees = Vec::new();
        for (i, dim) in p.group.v_g_dims() {
            let image = a.image_in_degree(i);
            let homotopy_dim = a.homology.in_degree(i).map_or(0, |d| d.dim());
            let status = if i > computed {
                DegreeStatus::Inconclusive
            } else if image.len() == dim {
                DegreeStatus::Visible
            } else {
                DegreeStatus::NotVisible
            };
            degrees.push(DegreeReport {
                degree: i,
                v_g_dim: dim,
                homotopy_dim,
                rank: image.len(),
                status,
                image: image.iter().map(|v| a.mu.format(v)).collect(),
            });
        }
        let vd = degrees
            .iter()
            .filter(|d| d.status == DegreeStatus::Visible)
            .map(|d| d.degree)
            .collect();
        let detected_degrees = degrees.iter().filter(|d| d.rank > 0).map(|d| d.degree).collect();
        let small = &a.reduction.small.cdga;
        let small_model = (0..small.alg.len())
            .map(|i| {
                let g = small.alg.generator(i);
                let d = small.d.image(i);
                if d.is_zero() {
                    format!("{} (deg {})", g.name, g.degree)
                } else {
                    format!("d {} = {} (deg {})", g.name, d, g.degree)
                }
            })
            .collect();
        VisibilityReport {
            schema: REPORT_SCHEMA.to_string(),
            name: p.name.clone(),
            group: p.group.name.clone(),
            subgroup: p.subgroup_name.clone(),
            n_g: p.group.n_g().into_iter().collect(),
            vd,
            detected_degrees,
            degrees,
            homotopy: a.homotopy_dims(),
            cohomology: CohomologySummary {
                poincare: a.h.poincare(),
                dims: a.h.dims(),
                closed: a.h.is_closed(),
                formal_dimension: a.formal_dimension,
            },
            small_model,
            eliminated: a.reduction.eliminated.clone(),
            certificates: certificates.iter().map(CertificateReport::from).collect(),
            regime: p.options.regime,
            elimination_sign: p.options.elimination_sign,
        }
    }

    pub fn certified_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.certificates.iter().filter(|c| c.certifies()).map(|c| c.degree()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}
