//! First monochromatic witness `v ∈ R` for a retraction family and a
//! coloring of `T`.

use crate::instances::{vdw_encode, Coloring, CombinatorialLine, Progression};
use crate::semigroup::{FiniteFamily, RetractionSystem, SubstitutionFamily, WordSemigroup};

use super::certificate::{CertInstance, Certificate};
use super::SearchError;

#[derive(Debug, Clone)]
pub enum WitnessInstance {
    Words(SubstitutionFamily),
    Finite(FiniteFamily),
}

impl WitnessInstance {
    /// Classical Hales–Jewett: one variable, `σ_a` for every letter `a`.
    pub fn classical(alphabet: u8) -> Self {
        WitnessInstance::Words(SubstitutionFamily::diagonal(WordSemigroup::classical(alphabet)))
    }

    fn descriptor(&self) -> (CertInstance, String) {
        match self {
            WitnessInstance::Words(fam) => {
                let ws = fam.semigroup();
                let description = if *fam == SubstitutionFamily::diagonal(*ws) {
                    format!("σ_a: every variable ↦ a, for a in 0..{}", ws.alphabet_size())
                } else {
                    format!("{} substitutions", fam.assignments().len())
                };
                (
                    CertInstance::Words {
                        alphabet: ws.alphabet_size(),
                        variables: ws.variable_count(),
                        assignments: fam.assignments().iter().map(|a| a[..ws.variable_count() as usize].to_vec()).collect(),
                    },
                    description,
                )
            }
            WitnessInstance::Finite(fam) => {
                let sg = fam.semigroup();
                (
                    CertInstance::FiniteSemigroup {
                        table: sg.rows(),
                        labels: sg.elements().map(|x| sg.label(x)).collect(),
                        subsemigroup: fam.members().iter().collect(),
                        retractions: fam.maps().to_vec(),
                    },
                    format!("{} retractions onto T", fam.maps().len()),
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(Box<Certificate>),
    /// No witness among the `examined` candidates allowed by `budget`.
    Exhausted { budget: usize, examined: u64 },
}

/// Scans `R` in a fixed order (index order for finite semigroups,
/// length-lexicographic for words) and returns the first `v` whose images
/// all share a color.
///
/// `budget` is the maximum word length, or for finite semigroups the
/// number of elements of `R` to examine.
pub fn witness_search(
    instance: &WitnessInstance,
    coloring: &Coloring,
    budget: usize,
) -> Result<WitnessOutcome, SearchError> {
    let mut examined = 0u64;
    let found = match instance {
        WitnessInstance::Words(fam) => {
            let mut found = None;
            for v in fam.semigroup().variable_words_up_to(budget) {
                examined += 1;
                let images = fam.images(&v);
                let colors = images
                    .iter()
                    .map(|w| coloring.color_of_word(w))
                    .collect::<Result<Vec<u8>, _>>()?;
                if colors.iter().all(|&c| c == colors[0]) {
                    found = Some((v.to_string(), images.iter().map(ToString::to_string).collect(), colors[0]));
                    break;
                }
            }
            found
        }
        WitnessInstance::Finite(fam) => {
            let sg = fam.semigroup();
            let mut found = None;
            for v in fam.ideal().iter().take(budget) {
                examined += 1;
                let images = fam.images(&v);
                let colors = images
                    .iter()
                    .map(|&x| coloring.color_of_element(&sg.label(x), x))
                    .collect::<Result<Vec<u8>, _>>()?;
                if colors.iter().all(|&c| c == colors[0]) {
                    found = Some((sg.label(v), images.iter().map(|&x| sg.label(x)).collect(), colors[0]));
                    break;
                }
            }
            found
        }
    };
    Ok(match found {
        Some((witness, images, color)) => {
            let (inst, description) = instance.descriptor();
            let cert = Certificate::seal(
                inst,
                description,
                Some(coloring.clone()),
                witness,
                images,
                Some(color),
                examined,
            );
            cert.verify().expect("fresh witness certificate verifies");
            WitnessOutcome::Found(Box::new(cert))
        }
        None => WitnessOutcome::Exhausted { budget, examined },
    })
}

/// Pulls an integer coloring back along the digit-sum map, runs the
/// classical witness search over `[k]`, and maps the witness line to its
/// progression, which is checked to be monochromatic.
pub fn vdw_via_hj(
    k: u8,
    coloring: &Coloring,
    max_len: usize,
) -> Result<(WitnessOutcome, Option<Progression>), SearchError> {
    if matches!(coloring, Coloring::Table { .. }) {
        return Err(SearchError::Unsupported(
            "via-hj needs a computable integer coloring (mod or apres)".into(),
        ));
    }
    let outcome = witness_search(&WitnessInstance::classical(k), coloring, max_len)?;
    let WitnessOutcome::Found(cert) = &outcome else {
        return Ok((outcome, None));
    };
    let template = cert.witness.parse().expect("certificate witness is a word");
    let line = CombinatorialLine::new(template, k)?;
    let ap = vdw_encode(k, line.len())?.line_image(&line)?;
    let colors = ap
        .terms()
        .iter()
        .map(|&t| coloring.color_of_int(t))
        .collect::<Result<Vec<u8>, _>>()?;
    if colors.iter().any(|&c| c != colors[0]) {
        return Err(SearchError::CrossCheck(format!(
            "witness {} maps to {:?}, which is not monochromatic",
            cert.witness,
            ap.terms()
        )));
    }
    Ok((outcome, Some(ap)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{flag_family, flag_index, flag_retraction, flag_semigroup};

    #[test]
    fn classical_mod_two() {
        let c = Coloring::parse("mod:2").unwrap();
        let WitnessOutcome::Found(cert) = witness_search(&WitnessInstance::classical(2), &c, 4).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(cert.witness, "xx");
        assert_eq!(cert.images, ["00", "11"]);
        assert_eq!(cert.color, Some(0));
        let out = witness_search(&WitnessInstance::classical(2), &c, 1).unwrap();
        assert_eq!(out, WitnessOutcome::Exhausted { budget: 1, examined: 1 });
    }

    #[test]
    fn flag_witness_is_at_most_top_element() {
        let fam = flag_family(2);
        let t: Vec<usize> = fam.members().iter().collect();
        for mask in 0u32..8 {
            let table: String = t.iter().map(|&x| format!("{x} {}\n", mask >> x & 1)).collect();
            let c = Coloring::parse_table(&table).unwrap();
            let WitnessOutcome::Found(cert) = witness_search(&WitnessInstance::Finite(fam.clone()), &c, usize::MAX).unwrap()
            else {
                panic!("flag families always have a witness");
            };
            let v = fam.semigroup().resolve(&cert.witness).unwrap();
            assert!(v <= flag_index(2, 2, true));
        }
        // (1,0) and (2,0) differ, so (0,1) and (1,1) both fail
        let c = Coloring::parse_table("(0,0) 0\n(1,0) 0\n(2,0) 1\n").unwrap();
        let WitnessOutcome::Found(cert) = witness_search(&WitnessInstance::Finite(fam), &c, usize::MAX).unwrap() else {
            panic!();
        };
        assert_eq!(cert.witness, "(2,1)");
        assert_eq!(cert.images, ["(2,0)"; 3]);
    }

    #[test]
    fn singleton_family_takes_first_element_of_r() {
        let (sg, t) = flag_semigroup(3);
        let fam = FiniteFamily::new(sg, t, vec![flag_retraction(3, 1)]).unwrap();
        let c = Coloring::parse("mod:3").unwrap();
        let WitnessOutcome::Found(cert) = witness_search(&WitnessInstance::Finite(fam), &c, usize::MAX).unwrap() else {
            panic!();
        };
        assert_eq!(cert.witness, "(0,1)");
    }

    #[test]
    fn missing_colors_are_errors() {
        let c = Coloring::parse_table("00 0\n").unwrap();
        let err = witness_search(&WitnessInstance::classical(2), &c, 3).unwrap_err();
        assert!(matches!(err, SearchError::Coloring(_)));
    }

    #[test]
    fn via_hj_maps_to_monochromatic_progressions() {
        let c = Coloring::parse("apres:2:01101").unwrap();
        let (out, ap) = vdw_via_hj(3, &c, 5).unwrap();
        assert!(matches!(out, WitnessOutcome::Found(_)));
        let ap = ap.unwrap();
        let colors: Vec<u8> = ap.terms().iter().map(|&t| c.color_of_int(t).unwrap()).collect();
        assert!(colors.iter().all(|&x| x == colors[0]));
        assert!(vdw_via_hj(3, &Coloring::parse_table("0 0\n").unwrap(), 3).is_err());
    }
}
