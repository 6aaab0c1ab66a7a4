//! Re-checkable certificates for witnesses and line-free colorings.
//!
//! A certificate is a JSON document with a fixed field order. Verification
//! never trusts the search: it rebuilds the instance, reapplies every
//! retraction or rescans every edge, and recomputes the digest that binds
//! the claimed content.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::hypergraph::{ap_hypergraph, line_hypergraph};
use crate::instances::Coloring;
use crate::semigroup::{FiniteFamily, FiniteSemigroup, Word};
use crate::subset::SubsetQuery;

pub const CERTIFICATE_FORMAT: &str = "hjkit-certificate-1";

/// Largest vertex count a coloring certificate may claim.
const MAX_CERTIFIED_VERTICES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertInstance {
    /// Words over `alphabet` letters and `variables` variables; retraction
    /// `i` substitutes `assignments[i][j]` for variable `j`.
    Words {
        alphabet: u8,
        variables: u8,
        assignments: Vec<Vec<u8>>,
    },
    FiniteSemigroup {
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
        subsemigroup: Vec<usize>,
        retractions: Vec<Vec<usize>>,
    },
    /// A coloring of `[n]^length` with no monochromatic line.
    HjColoring { n: u8, length: usize, colors: u8 },
    /// A coloring of `[1..m]` with no monochromatic `k`-term progression.
    VdwColoring { k: usize, m: usize, colors: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub instance: CertInstance,
    pub sigma_family: String,
    pub coloring: Option<Coloring>,
    /// The witness `v`, or for coloring certificates one color digit per
    /// vertex in index order.
    pub witness: String,
    pub images: Vec<String>,
    pub color: Option<u8>,
    pub nodes: u64,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("not a certificate: {0}")]
    Parse(String),
    #[error("unknown format {0:?}")]
    Format(String),
    #[error("digest mismatch")]
    Digest,
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("invalid witness: {0}")]
    Witness(String),
    #[error("listed images differ from the recomputed ones")]
    Images,
    #[error("image {image} has color {found}, expected {expected}")]
    Color { image: String, found: u8, expected: u8 },
    #[error("edge {0} is monochromatic")]
    Monochromatic(usize),
}

#[derive(Serialize)]
struct Bound<'a> {
    format: &'a str,
    instance: &'a CertInstance,
    sigma_family: &'a str,
    coloring: &'a Option<Coloring>,
    witness: &'a str,
    images: &'a [String],
    color: Option<u8>,
}

fn color_digit(c: u8) -> char {
    char::from_digit(c as u32, 36).expect("colors fit in base 36")
}

impl Certificate {
    /// Builds a certificate and fills in its digest.
    pub fn seal(
        instance: CertInstance,
        sigma_family: String,
        coloring: Option<Coloring>,
        witness: String,
        images: Vec<String>,
        color: Option<u8>,
        nodes: u64,
    ) -> Self {
        let mut cert = Certificate {
            format: CERTIFICATE_FORMAT.to_string(),
            instance,
            sigma_family,
            coloring,
            witness,
            images,
            color,
            nodes,
            digest: String::new(),
        };
        cert.digest = cert.compute_digest();
        cert
    }

    /// A line-free coloring of `[n]^length`.
    pub fn hj_coloring(n: u8, length: usize, colors: u8, coloring: &[u8], nodes: u64) -> Self {
        Self::seal(
            CertInstance::HjColoring { n, length, colors },
            format!("combinatorial lines of [{n}]^{length}"),
            None,
            coloring.iter().map(|&c| color_digit(c)).collect(),
            Vec::new(),
            None,
            nodes,
        )
    }

    /// A `k`-AP-free coloring of `[1..m]`.
    pub fn vdw_coloring(k: usize, m: usize, colors: u8, coloring: &[u8], nodes: u64) -> Self {
        Self::seal(
            CertInstance::VdwColoring { k, m, colors },
            format!("{k}-term arithmetic progressions in [1..{m}]"),
            None,
            coloring.iter().map(|&c| color_digit(c)).collect(),
            Vec::new(),
            None,
            nodes,
        )
    }

    fn compute_digest(&self) -> String {
        let bound = Bound {
            format: &self.format,
            instance: &self.instance,
            sigma_family: &self.sigma_family,
            coloring: &self.coloring,
            witness: &self.witness,
            images: &self.images,
            color: self.color,
        };
        let bytes = serde_json::to_vec(&bound).expect("certificate content serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(text).map_err(|e| VerifyError::Parse(e.to_string()))
    }

    /// Parses and verifies in one step.
    pub fn verify_text(text: &str) -> Result<Self, VerifyError> {
        let cert = Self::from_json(text)?;
        cert.verify()?;
        Ok(cert)
    }

    pub fn verify(&self) -> Result<(), VerifyError> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(VerifyError::Format(self.format.clone()));
        }
        if self.compute_digest() != self.digest {
            return Err(VerifyError::Digest);
        }
        match &self.instance {
            CertInstance::Words {
                alphabet,
                variables,
                assignments,
            } => self.verify_words(*alphabet, *variables, assignments),
            CertInstance::FiniteSemigroup {
                table,
                labels,
                subsemigroup,
                retractions,
            } => self.verify_finite(table, labels, subsemigroup, retractions),
            CertInstance::HjColoring { n, length, colors } => {
                if *n < 2 || *length == 0 {
                    return Err(VerifyError::Instance("need n >= 2 and length >= 1".into()));
                }
                let size = (*n as usize)
                    .checked_pow(*length as u32)
                    .filter(|&s| s <= MAX_CERTIFIED_VERTICES)
                    .ok_or_else(|| VerifyError::Instance("instance too large to verify".into()))?;
                let coloring = self.parse_coloring(size, *colors)?;
                let h = line_hypergraph(*n, *length).map_err(|e| VerifyError::Instance(e.to_string()))?;
                match h.first_monochromatic_edge(&coloring) {
                    Some(e) => Err(VerifyError::Monochromatic(e)),
                    None => Ok(()),
                }
            }
            CertInstance::VdwColoring { k, m, colors } => {
                if *k < 2 || *m > MAX_CERTIFIED_VERTICES {
                    return Err(VerifyError::Instance("need k >= 2 and a verifiable m".into()));
                }
                let coloring = self.parse_coloring(*m, *colors)?;
                let h = ap_hypergraph(*k, *m).map_err(|e| VerifyError::Instance(e.to_string()))?;
                match h.first_monochromatic_edge(&coloring) {
                    Some(e) => Err(VerifyError::Monochromatic(e)),
                    None => Ok(()),
                }
            }
        }
    }

    fn parse_coloring(&self, size: usize, colors: u8) -> Result<Vec<u8>, VerifyError> {
        if colors == 0 || colors > 36 {
            return Err(VerifyError::Instance(format!("color count {colors} outside 1..=36")));
        }
        let coloring: Vec<u8> = self
            .witness
            .chars()
            .map(|ch| match ch.to_digit(36) {
                Some(c) if c < colors as u32 => Ok(c as u8),
                _ => Err(VerifyError::Witness(format!("{ch:?} is not a color below {colors}"))),
            })
            .collect::<Result<_, _>>()?;
        if coloring.len() != size {
            return Err(VerifyError::Witness(format!(
                "expected {size} colors, found {}",
                coloring.len()
            )));
        }
        Ok(coloring)
    }

    fn check_colors(&self, colors: Vec<(String, u8)>) -> Result<(), VerifyError> {
        let expected = self
            .color
            .ok_or_else(|| VerifyError::Witness("missing color".into()))?;
        for (image, found) in colors {
            if found != expected {
                return Err(VerifyError::Color { image, found, expected });
            }
        }
        Ok(())
    }

    fn verify_words(&self, alphabet: u8, variables: u8, assignments: &[Vec<u8>]) -> Result<(), VerifyError> {
        if alphabet == 0 || variables == 0 || assignments.is_empty() {
            return Err(VerifyError::Instance("empty alphabet, variable set or family".into()));
        }
        for a in assignments {
            if a.len() != variables as usize || a.iter().any(|&x| x >= alphabet) {
                return Err(VerifyError::Instance(format!("bad assignment {a:?}")));
            }
        }
        let coloring = self
            .coloring
            .as_ref()
            .ok_or_else(|| VerifyError::Instance("missing coloring".into()))?;
        let v: Word = self.witness.parse().map_err(|e| VerifyError::Witness(format!("{e}")))?;
        v.check_bounds(alphabet, variables)
            .map_err(|e| VerifyError::Witness(e.to_string()))?;
        if !v.has_variable() {
            return Err(VerifyError::Witness("witness lies in T".into()));
        }
        let images: Vec<Word> = assignments
            .iter()
            .map(|a| v.substitute(a).expect("assignment covers every variable"))
            .collect();
        let listed: Vec<String> = images.iter().map(Word::to_string).collect();
        if listed != self.images {
            return Err(VerifyError::Images);
        }
        let colors = images
            .iter()
            .map(|w| {
                coloring
                    .color_of_word(w)
                    .map(|c| (w.to_string(), c))
                    .map_err(|e| VerifyError::Witness(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        self.check_colors(colors)
    }

    fn verify_finite(
        &self,
        table: &[Vec<usize>],
        labels: &[String],
        subsemigroup: &[usize],
        retractions: &[Vec<usize>],
    ) -> Result<(), VerifyError> {
        let bad = |e: &dyn std::fmt::Display| VerifyError::Instance(e.to_string());
        let sg = FiniteSemigroup::from_rows(table)
            .and_then(|sg| sg.with_labels(labels.to_vec()))
            .map_err(|e| bad(&e))?;
        if subsemigroup.iter().any(|&x| x >= sg.order()) {
            return Err(VerifyError::Instance("subsemigroup names a missing element".into()));
        }
        let members = SubsetQuery::from_indices(sg.order(), subsemigroup.iter().copied());
        let family = FiniteFamily::new(sg, members, retractions.to_vec()).map_err(|e| bad(&e))?;
        let sg = family.semigroup();
        let coloring = self
            .coloring
            .as_ref()
            .ok_or_else(|| VerifyError::Instance("missing coloring".into()))?;
        let v = sg
            .resolve(&self.witness)
            .ok_or_else(|| VerifyError::Witness(format!("no element {:?}", self.witness)))?;
        if family.members().contains(v) {
            return Err(VerifyError::Witness("witness lies in T".into()));
        }
        let images: Vec<usize> = family.maps().iter().map(|m| m[v]).collect();
        let listed: Vec<String> = images.iter().map(|&x| sg.label(x)).collect();
        if listed != self.images {
            return Err(VerifyError::Images);
        }
        let colors = images
            .iter()
            .map(|&x| {
                let label = sg.label(x);
                coloring
                    .color_of_element(&label, x)
                    .map(|c| (label, c))
                    .map_err(|e| VerifyError::Witness(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        self.check_colors(colors)
    }
}
