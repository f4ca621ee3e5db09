//! Node-by-node exactness of
//! `0 -> C(A) -> V -> J_rho -> V^rho~ (-> 0)` and
//! `0 -> V^D~ -> V -> V -> V^D~ (-> 0)`, as additive maps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{AElem, ASubset, Extension};

type Map<'a> = Box<dyn Fn(&AElem) -> AElem + 'a>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// `0 -> C(A) -> V -> J_rho -> V^rho~`, with `I_x` and `tau`
    Automorphism,
    /// `0 -> V^D~ -> V -> V -> V^D~`, with `D~` and `tau`
    Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    /// the object at which exactness is tested
    pub node: &'static str,
    pub exact: bool,
    /// sizes of the image arriving and the kernel leaving
    pub image_size: usize,
    pub kernel_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub kind: SequenceKind,
    pub nodes: Vec<NodeReport>,
    /// every arrow lands in its stated codomain
    pub maps_well_defined: bool,
    /// exact at every node before the last object
    pub exact_without_final: bool,
    /// additionally `tau` is onto the last object
    pub exact_with_final: bool,
}

fn node(name: &'static str, image: &ASubset, kernel: &ASubset) -> NodeReport {
    NodeReport {
        node: name,
        exact: image == kernel,
        image_size: image.len(),
        kernel_size: kernel.len(),
    }
}

pub fn exact_sequence_check(ext: &Extension, kind: SequenceKind) -> Result<ExactnessReport> {
    let m = ext.degree();
    let zero = ASubset::from_sorted(vec![ext.handle(&ext.zero())]);
    let v = ext.centralizer();
    let (first, middle, last, first_map, tau): (ASubset, ASubset, ASubset, Map<'_>, Map<'_>) =
        match kind {
            SequenceKind::Automorphism => {
                let rho = ext.context().rho();
                if !ext.rho_tilde_defined() || m < 2 || rho.order() as usize != m {
                    return Err(Error::Precondition(format!(
                        "automorphism-type sequence needs D = 0, coefficients fixed by rho and degree = ord(rho) >= 2 (degree {m}, ord {})",
                        rho.order()
                    )));
                }
                let fixed = ASubset::from_sorted(
                    v.iter()
                        .filter(|&h| {
                            let a = ext.decode(h.0);
                            ext.rho_tilde(&a) == a
                        })
                        .collect(),
                );
                (
                    ext.center(),
                    ext.twisted_centralizer(1),
                    fixed,
                    Box::new(|h| ext.sub(&ext.mul_x_right(h), &ext.mul_x_left(h))),
                    Box::new(|h| ext.tau_rho_unchecked(h)),
                )
            }
            SequenceKind::Derivation => {
                if ext.p_polynomial().is_none() || !ext.d_tilde_defined() {
                    return Err(Error::Precondition(
                        "derivation-type sequence needs rho = 1 and a p-polynomial with D-constant coefficients".into(),
                    ));
                }
                let constants = ASubset::from_sorted(
                    v.iter()
                        .filter(|&h| ext.d_tilde(&ext.decode(h.0)).is_zero())
                        .collect(),
                );
                (
                    constants.clone(),
                    v.clone(),
                    constants,
                    Box::new(|h| ext.d_tilde(h)),
                    Box::new(|h| ext.tau_d_unchecked(h)),
                )
            }
        };
    let image_first = ext.image_of(&v, |h| first_map(h));
    let kernel_first = ASubset::from_sorted(
        v.iter()
            .filter(|&h| first_map(&ext.decode(h.0)).is_zero())
            .collect(),
    );
    let image_tau = ext.image_of(&middle, |h| tau(h));
    let kernel_tau = ASubset::from_sorted(
        middle
            .iter()
            .filter(|&h| tau(&ext.decode(h.0)).is_zero())
            .collect(),
    );
    let maps_well_defined = first.is_subset_of(&v)
        && image_first.is_subset_of(&middle)
        && image_tau.is_subset_of(&last);
    let (first_name, middle_name) = match kind {
        SequenceKind::Automorphism => ("center", "j_rho"),
        SequenceKind::Derivation => ("v_constants", "v_target"),
    };
    // the inclusion is injective, so the first node is exact by construction
    let nodes = vec![
        node(first_name, &zero, &zero),
        node("v", &first, &kernel_first),
        node(middle_name, &image_first, &kernel_tau),
        node("final", &image_tau, &last),
    ];
    let exact_without_final = maps_well_defined && nodes[..3].iter().all(|n| n.exact);
    let exact_with_final = exact_without_final && nodes[3].exact;
    Ok(ExactnessReport {
        kind,
        nodes,
        maps_well_defined,
        exact_without_final,
        exact_with_final,
    })
}
