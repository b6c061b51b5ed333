//! K-data of one object filtered by a finite ideal lattice.
//!
//! Conventions: `ρ̃: K0⊗Z/n -> Kn` and `β̃: Kn -> K1`, the latter taking values
//! in `K1[n]` on valid instances. Ideal subgroups are subgroups of the
//! ambient groups `K0`, `K1`, `Kn`.

pub mod coherence;
pub mod validate;

pub use coherence::{
    check_coherence, check_family_coherence, family_coherence_witness, natural_kappa,
    natural_lambda, CoeffLevel, CoefficientMap, CoherenceError, CoherentFamily,
};
pub use validate::validate_instance;

use thiserror::Error;

use crate::fgab::{
    n_torsion, restrict, tensor_zmod, FgGroup, GroupError, GroupHom, Int, Subgroup,
};
use crate::lattice::{IdealLattice, LatticeError};
use crate::sequences::{SequenceResult, ShortExact};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("coefficient must be at least 2, got {0}")]
    BadCoefficient(String),
    #[error("{0} has the wrong domain or codomain")]
    MapShape(&'static str),
    #[error("ideal {0:?} has a subgroup in the wrong ambient group")]
    IdealAmbient(String),
    #[error("ideal list does not match lattice nodes: {0}")]
    IdealsMismatch(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KData {
    pub k0: FgGroup,
    pub k1: FgGroup,
}

/// The coefficient row `K0⊗Z/n -> Kn -> K1[n]` at a fixed `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffGroup {
    pub n: Int,
    pub kn: FgGroup,
    pub rho_tilde: GroupHom,
    pub beta_tilde: GroupHom,
}

impl CoeffGroup {
    pub fn new(data: &KData, n: Int, kn: FgGroup, rho: GroupHom, beta: GroupHom) -> Result<Self, InstanceError> {
        if n < Int::from(2) {
            return Err(InstanceError::BadCoefficient(n.to_string()));
        }
        let (k0n, _) = tensor_zmod(&data.k0, &n);
        if rho.domain() != &k0n || rho.codomain() != &kn {
            return Err(InstanceError::MapShape("rho_tilde"));
        }
        if beta.domain() != &kn || beta.codomain() != &data.k1 {
            return Err(InstanceError::MapShape("beta_tilde"));
        }
        Ok(CoeffGroup {
            n,
            kn,
            rho_tilde: rho,
            beta_tilde: beta,
        })
    }
}

/// Subgroups attached to one ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealNode {
    pub id: String,
    pub k0: Subgroup,
    pub k1: Subgroup,
    pub kn: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethInstance {
    pub data: KData,
    pub coeff: CoeffGroup,
    pub lattice: IdealLattice,
    /// Indexed like the lattice nodes.
    pub ideals: Vec<IdealNode>,
    pub family: Option<CoherentFamily>,
}

impl KunnethInstance {
    /// Checks shapes only; the structural hypotheses are left to
    /// [`validate_instance`].
    pub fn new(
        data: KData,
        coeff: CoeffGroup,
        lattice: IdealLattice,
        ideals: Vec<IdealNode>,
    ) -> Result<Self, InstanceError> {
        if ideals.len() != lattice.len() {
            return Err(InstanceError::IdealsMismatch(format!(
                "{} ideals for {} nodes",
                ideals.len(),
                lattice.len()
            )));
        }
        let mut slots: Vec<Option<IdealNode>> = vec![None; lattice.len()];
        for node in ideals {
            let i = lattice.index(&node.id)?;
            if node.k0.ambient() != &data.k0
                || node.k1.ambient() != &data.k1
                || node.kn.ambient() != &coeff.kn
            {
                return Err(InstanceError::IdealAmbient(node.id));
            }
            if slots[i].is_some() {
                return Err(InstanceError::IdealsMismatch(format!("{:?} repeated", node.id)));
            }
            slots[i] = Some(node);
        }
        let ideals = slots.into_iter().map(|s| s.expect("one ideal per node")).collect();
        Ok(KunnethInstance {
            data,
            coeff,
            lattice,
            ideals,
            family: None,
        })
    }

    pub fn with_family(mut self, family: CoherentFamily) -> Self {
        self.family = Some(family);
        self
    }

    pub fn n(&self) -> &Int {
        &self.coeff.n
    }

    pub fn kn(&self) -> &FgGroup {
        &self.coeff.kn
    }

    pub fn rho(&self) -> &GroupHom {
        &self.coeff.rho_tilde
    }

    pub fn beta(&self) -> &GroupHom {
        &self.coeff.beta_tilde
    }

    pub fn ideal(&self, i: usize) -> &IdealNode {
        &self.ideals[i]
    }

    pub fn ideal_by_id(&self, id: &str) -> Result<&IdealNode, LatticeError> {
        Ok(&self.ideals[self.lattice.index(id)?])
    }

    pub fn top(&self) -> Option<usize> {
        self.lattice.top()
    }

    /// `K0 ⊗ Z/n` with the reduction map.
    pub fn k0_mod_n(&self) -> (FgGroup, GroupHom) {
        tensor_zmod(&self.data.k0, &self.coeff.n)
    }

    /// `K1[n]` as a subgroup of `K1`.
    pub fn k1_torsion(&self) -> Subgroup {
        n_torsion(&self.data.k1, &self.coeff.n)
    }

    /// `π(K0(I))` inside `K0 ⊗ Z/n`.
    pub fn k0_reduced(&self, i: usize) -> Subgroup {
        let (_, pi) = self.k0_mod_n();
        pi.image_of(&self.ideals[i].k0).expect("same ambient")
    }

    /// `ρ̃π(K0(I))` inside `Kn`.
    pub fn rho_image(&self, i: usize) -> Subgroup {
        self.rho().image_of(&self.k0_reduced(i)).expect("same ambient")
    }

    /// `K1(I)[n]` inside `K1`.
    pub fn k1_torsion_of(&self, i: usize) -> Subgroup {
        self.ideals[i].k1.n_torsion(&self.coeff.n)
    }

    /// The restricted row `π(K0(I)) -> Kn(I) -> K1(I)[n]` on canonical groups,
    /// or `None` if the maps do not restrict (naturality failure). Exactness is
    /// not checked.
    pub fn ideal_sequence(&self, i: usize) -> Option<ShortExact> {
        let a = self.k0_reduced(i);
        let b = &self.ideals[i].kn;
        let c = self.k1_torsion_of(i);
        let left = restrict(self.rho(), &a, b)?;
        let right = restrict(self.beta(), b, &c)?;
        ShortExact::unchecked(left, right).ok()
    }

    /// The row of the whole object with `K1[n]` as a canonical group.
    pub fn top_sequence(&self) -> SequenceResult<ShortExact> {
        let t = self.k1_torsion();
        let right = self
            .beta()
            .corestrict(&t)
            .map_err(|_| crate::sequences::SequenceError::NotExact(1))?;
        ShortExact::new(self.rho().clone(), right)
    }
}

/// `ρ_n = ρ̃ ∘ π: K0 -> Kn`.
pub fn mod_reduction(inst: &KunnethInstance) -> GroupHom {
    let (_, pi) = inst.k0_mod_n();
    inst.rho().compose(&pi).expect("composable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::int;

    #[test]
    fn zero_k0_gives_zero_reduction() {
        let data = KData {
            k0: FgGroup::trivial(),
            k1: FgGroup::cyclic(2),
        };
        let kn = FgGroup::cyclic(2);
        let (k0n, _) = tensor_zmod(&data.k0, &int(2));
        let coeff = CoeffGroup::new(
            &data,
            int(2),
            kn.clone(),
            GroupHom::zero(&k0n, &kn),
            GroupHom::identity(&kn),
        )
        .unwrap();
        let lattice = IdealLattice::from_strs(&["A"], &[]).unwrap();
        let node = IdealNode {
            id: "A".into(),
            k0: Subgroup::whole(&data.k0),
            k1: Subgroup::whole(&data.k1),
            kn: Subgroup::whole(&kn),
        };
        let inst = KunnethInstance::new(data, coeff, lattice, vec![node]).unwrap();
        assert!(mod_reduction(&inst).is_zero());
        assert!(inst.top_sequence().is_ok());
    }
}
