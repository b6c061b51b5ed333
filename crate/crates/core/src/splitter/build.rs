//! The inductive construction over the ideal lattice.

use std::fmt;
use std::str::FromStr;

use crate::fgab::{Element, GroupHom, HomSystem, Int, Subgroup, SubgroupHom};
use crate::kunneth::{validate_instance, KunnethInstance};
use crate::report::Witness;
use crate::sequences::{find_splitting_constrained, greedy_splitting, ShortExact};

use super::gamma::gamma_complex;
use super::{SplitResult, SplitterError};

/// Per-ideal splittings `σ_I: K1(I)[n] -> Kn`, indexed like the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingFamily {
    pub ids: Vec<String>,
    pub sigmas: Vec<SubgroupHom>,
}

impl SplittingFamily {
    pub fn sigma(&self, id: &str) -> Option<&SubgroupHom> {
        self.ids.iter().position(|x| x == id).map(|i| &self.sigmas[i])
    }

    /// The family of restrictions of one splitting on `K1[n]`.
    pub fn from_top(inst: &KunnethInstance, top: &SubgroupHom) -> SplitResult<Self> {
        let sigmas = (0..inst.lattice.len())
            .map(|i| restrict_partial(top, &inst.k1_torsion_of(i)))
            .collect::<SplitResult<_>>()?;
        Ok(SplittingFamily {
            ids: inst.lattice.ids().to_vec(),
            sigmas,
        })
    }

    /// `σ` at the top ideal, if the lattice has one.
    pub fn top(&self, inst: &KunnethInstance) -> Option<&SubgroupHom> {
        inst.top().map(|t| &self.sigmas[t])
    }
}

/// `f` restricted to a subgroup of its domain.
pub(crate) fn restrict_partial(f: &SubgroupHom, to: &Subgroup) -> SplitResult<SubgroupHom> {
    let inc = &to.structure().inclusion;
    let images = (0..inc.domain().dim())
        .map(|j| f.eval(&inc.image_of_generator(j)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SubgroupHom::from_ambient_images(to.clone(), f.codomain().clone(), images)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// One linear solve per extension step.
    #[default]
    Solver,
    /// Grow a complement generator by generator; incomplete.
    Greedy,
    /// Solver, with greedy run alongside and compared.
    Both,
    /// Skip the induction: one solve for a top splitting meeting every
    /// ideal constraint, then restrict.
    Global,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Solver => "solver",
            Strategy::Greedy => "greedy",
            Strategy::Both => "both",
            Strategy::Global => "global",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Strategy::Solver, Strategy::Greedy, Strategy::Both, Strategy::Global]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

/// Which `Γ⁰`-preimage the gluing step picks; both must give the same map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PreimageChoice {
    #[default]
    Forward,
    /// Parts taken in reverse order.
    Reverse,
}

/// The ideal row `π(K0(I)) -> Kn(I) -> K1(I)[n]` with its subgroups.
struct IdealRow {
    kn: Subgroup,
    c: Subgroup,
    seq: ShortExact,
}

fn ideal_row(inst: &KunnethInstance, i: usize) -> SplitResult<IdealRow> {
    let seq = inst
        .ideal_sequence(i)
        .ok_or_else(|| SplitterError::InvalidInstance(vec![crate::kunneth::validate::NATURALITY.into()]))?;
    Ok(IdealRow {
        kn: inst.ideal(i).kn.clone(),
        c: inst.k1_torsion_of(i),
        seq,
    })
}

/// `τ` moved onto the canonical groups of the row.
fn partial_on_row(row: &IdealRow, tau: &SubgroupHom) -> SplitResult<SubgroupHom> {
    let c_struct = row.c.structure();
    let gens = tau
        .domain()
        .generators()
        .iter()
        .map(|g| row.c.coords(g))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| SplitterError::InvalidTau("domain is not inside K1(I)[n]".into()))?;
    let dom = Subgroup::new(c_struct.group.clone(), gens)?;
    let inc = &dom.structure().inclusion;
    let images = (0..inc.domain().dim())
        .map(|j| {
            let y = c_struct.inclusion.apply(&inc.image_of_generator(j));
            let v = tau.eval(&y)?;
            row.kn.coords(&v)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| SplitterError::InvalidTau("image leaves Kn(I)".into()))?;
    let partial = SubgroupHom::from_ambient_images(dom, row.seq.b().clone(), images)?;
    if !row.seq.is_partial_splitting(&partial) {
        return Err(SplitterError::InvalidTau("beta~ tau is not the inclusion".into()));
    }
    Ok(partial)
}

fn back_to_ambient(row: &IdealRow, sigma: &GroupHom) -> SplitResult<SubgroupHom> {
    let map = row.kn.structure().inclusion.compose(sigma)?;
    Ok(SubgroupHom::new(row.c.clone(), map)?)
}

/// A splitting of ideal `target`'s row agreeing with `tau` (defined on a
/// subgroup of `K1(target)[n]`); `Ok(None)` if none exists for this strategy.
/// Under [`Strategy::Both`] a greedy success against a solver failure is a
/// [`SplitterError::StrategyConflict`]; the reverse is expected and returned
/// in `notes`.
pub fn extend_within(
    inst: &KunnethInstance,
    target: usize,
    tau: Option<&SubgroupHom>,
    strategy: Strategy,
    notes: &mut Vec<String>,
) -> SplitResult<Option<SubgroupHom>> {
    let row = ideal_row(inst, target)?;
    let partial = tau.map(|t| partial_on_row(&row, t)).transpose()?;
    let id = inst.lattice.id(target);
    let solved = || find_splitting_constrained(&row.seq, partial.as_ref());
    let greedy = || greedy_splitting(&row.seq, partial.as_ref());
    let found = match strategy {
        Strategy::Solver | Strategy::Global => solved()?,
        Strategy::Greedy => greedy()?,
        Strategy::Both => {
            let (s, g) = (solved()?, greedy()?);
            match (&s, &g) {
                (None, Some(_)) => {
                    return Err(SplitterError::StrategyConflict {
                        ideal: id.to_string(),
                        detail: "greedy found a splitting the solver missed".into(),
                    })
                }
                (Some(_), None) => notes.push(format!("{id}: greedy found no complement, solver did")),
                _ => {}
            }
            if let Some(gs) = &g {
                if !row.seq.is_splitting(gs) {
                    return Err(SplitterError::StrategyConflict {
                        ideal: id.to_string(),
                        detail: "greedy output is not a splitting".into(),
                    });
                }
            }
            s
        }
    };
    found.map(|s| back_to_ambient(&row, &s)).transpose()
}

/// A splitting of the whole row restricting to `tau` on `K1(I)[n]`.
pub fn extend_splitting(
    inst: &KunnethInstance,
    ideal: usize,
    tau: &SubgroupHom,
    strategy: Strategy,
) -> SplitResult<SubgroupHom> {
    let top = inst
        .top()
        .ok_or_else(|| SplitterError::InvalidInstance(vec![crate::kunneth::validate::LATTICE_ORDER.into()]))?;
    if tau.domain() != &inst.k1_torsion_of(ideal) {
        return Err(SplitterError::InvalidTau(format!(
            "domain is not K1({})[n]",
            inst.lattice.id(ideal)
        )));
    }
    extend_within(inst, top, Some(tau), strategy, &mut Vec::new())?.ok_or_else(|| SplitterError::NoExtension {
        ideal: inst.lattice.id(top).to_string(),
    })
}

/// Assembles `σ_I` from splittings on a comaximal family of subideals:
/// `σ_I(y) = Σ σ_i(y_i)` for any `Γ⁰`-preimage `(y_i)` of `y`.
pub fn glue_comaximal(
    inst: &KunnethInstance,
    ideal: usize,
    parts: &[usize],
    sigmas: &[SubgroupHom],
    choice: PreimageChoice,
) -> SplitResult<SubgroupHom> {
    let lat = &inst.lattice;
    let id = lat.id(ideal).to_string();
    if parts.is_empty() || parts.len() != sigmas.len() || !lat.is_comaximal_family(ideal, parts)? {
        return Err(SplitterError::NotComaximal(id));
    }
    let mut order: Vec<usize> = (0..parts.len()).collect();
    if choice == PreimageChoice::Reverse {
        order.reverse();
    }
    let groups: Vec<Subgroup> = order.iter().map(|&k| sigmas[k].domain().clone()).collect();
    for (&k, g) in order.iter().zip(&groups) {
        if g != &inst.k1_torsion_of(parts[k]) {
            return Err(SplitterError::InvalidTau(format!(
                "sigma for {} is not defined on K1({})[n]",
                lat.id(parts[k]),
                lat.id(parts[k])
            )));
        }
    }
    let gc = gamma_complex(&groups, None)?;
    let kn = inst.kn();
    let maps: Vec<GroupHom> = order.iter().map(|&k| sigmas[k].map().clone()).collect();
    let phi = gc.parts_sum.copair(kn, &maps);

    let target = inst.k1_torsion_of(ideal);
    let ker0 = gc.gamma0.kernel();
    if let Some(x) = ker0.generators().iter().find(|x| !kn.is_zero(&phi.apply(x))) {
        return Err(SplitterError::WellDefinedness {
            ideal: id,
            witness: Witness::new("sum K1(I_i)[n]", &gc.flatten(x)),
        });
    }
    let inc = &target.structure().inclusion;
    let mut images: Vec<Element> = Vec::with_capacity(inc.domain().dim());
    for j in 0..inc.domain().dim() {
        let y = inc.image_of_generator(j);
        let x = gc.gamma0.lift(&y).ok_or_else(|| SplitterError::GammaNotSurjective {
            ideal: id.clone(),
            witness: Witness::new("K1", &y),
        })?;
        images.push(phi.apply(&x));
    }
    let glued = SubgroupHom::from_ambient_images(target, kn.clone(), images)?;
    check_local(inst, ideal, &glued)?;
    Ok(glued)
}

/// `β̃σ = id` and `σ(K1(I)[n]) ⊆ Kn(I)`.
fn check_local(inst: &KunnethInstance, ideal: usize, sigma: &SubgroupHom) -> SplitResult<()> {
    let inc = &sigma.domain().structure().inclusion;
    let bs = inst.beta().compose(sigma.map())?;
    if &bs != inc {
        return Err(SplitterError::LiftCheck(format!(
            "splitting identity at {}",
            inst.lattice.id(ideal)
        )));
    }
    if !sigma.map().image().is_subgroup_of(&inst.ideal(ideal).kn) {
        return Err(SplitterError::LiftCheck(format!(
            "containment at {}",
            inst.lattice.id(ideal)
        )));
    }
    Ok(())
}

/// Result of the builder: the family plus strategy notes.
#[derive(Clone, Debug)]
pub struct BuildOutcome {
    pub family: SplittingFamily,
    pub notes: Vec<String>,
}

/// The solver-driven construction on a validated instance.
pub fn build_ideal_splitting(inst: &KunnethInstance) -> SplitResult<SplittingFamily> {
    Ok(build_with(inst, Strategy::Solver, false)?.family)
}

/// Walks the lattice in `next_ideal` order: the bottom gets the zero map, an
/// ideal with one maximal subideal extends that splitting, and an ideal with
/// several glues theirs. `force` skips validation.
pub fn build_with(inst: &KunnethInstance, strategy: Strategy, force: bool) -> SplitResult<BuildOutcome> {
    if !force {
        let report = validate_instance(inst);
        if !report.all_passed() {
            return Err(SplitterError::InvalidInstance(report.failed_checks()));
        }
    }
    if strategy == Strategy::Global {
        return build_global(inst);
    }
    let lat = &inst.lattice;
    let mut notes = Vec::new();
    let mut sigmas: Vec<Option<SubgroupHom>> = vec![None; lat.len()];
    for i in lat.induction_order() {
        let subs = lat.maximal_subideals(i);
        let sigma = match subs.as_slice() {
            [] => extend_within(inst, i, None, strategy, &mut notes)?,
            [j] => {
                let tau = sigmas[*j].as_ref().expect("processed");
                extend_within(inst, i, Some(tau), strategy, &mut notes)?
            }
            _ => {
                let taus: Vec<SubgroupHom> = subs
                    .iter()
                    .map(|&j| sigmas[j].clone().expect("processed"))
                    .collect();
                Some(glue_comaximal(inst, i, &subs, &taus, PreimageChoice::Forward)?)
            }
        };
        let sigma = sigma.ok_or_else(|| SplitterError::NoExtension {
            ideal: lat.id(i).to_string(),
        })?;
        sigmas[i] = Some(sigma);
    }
    Ok(BuildOutcome {
        family: SplittingFamily {
            ids: lat.ids().to_vec(),
            sigmas: sigmas.into_iter().map(|s| s.expect("every node visited")).collect(),
        },
        notes,
    })
}

/// One solve for `σ` on `K1[n]` with `σ(K1(I)[n]) ⊆ Kn(I)` for all `I`.
fn build_global(inst: &KunnethInstance) -> SplitResult<BuildOutcome> {
    let top = inst.k1_torsion();
    let ts = top.structure();
    let mut sys = HomSystem::new(&ts.group, inst.kn());
    for j in 0..ts.group.dim() {
        let e = ts.group.generator(j);
        sys.require_composite(inst.beta(), &e, &ts.inclusion.apply(&e));
    }
    for i in 0..inst.lattice.len() {
        let kn_i = &inst.ideal(i).kn;
        for y in inst.k1_torsion_of(i).generators() {
            let x: Vec<Int> = top.coords(y)?;
            sys.require_member(&x, kn_i);
        }
    }
    let sigma = sys.solve().ok_or_else(|| SplitterError::NoExtension {
        ideal: "global".into(),
    })?;
    let sigma = SubgroupHom::new(top, sigma)?;
    Ok(BuildOutcome {
        family: SplittingFamily::from_top(inst, &sigma)?,
        notes: Vec::new(),
    })
}
