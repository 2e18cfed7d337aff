//! Centrally symmetric polytopes of odd cardinality `w`, one for each subset
//! `S` of the vertex set `V'_{d,r}`:
//!
//! 1. `P'_{d,r} = conv(P_{d,r} ∩ Z^d \ S)`;
//! 2. peel `H_{d,r}` down to `P` with `|P| = |H'_{d,r}| + u/2 + |S|`;
//! 3. `P' = conv(P ∪ P'_{d,r})`, then `P_S = conv(P' ∪ -P')`.
//!
//! Every counting identity the construction relies on is certified at run
//! time and reported as a tagged [`Diagnostic`]; the first hard failure
//! aborts with [`Error::ConstructionFailure`] carrying its tag.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::peel::{peel_chain, PeelChain};
use super::{base_disk_count, base_disk_points, h_polytope, h_prime_polytope, k_polytope, paraboloid_cap_count, prime_vertices_of};
use crate::equivalence::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::json::polytope_to_json;
use crate::limits::check_size;
use crate::linalg::IntegerPoint;
use crate::polytope::LatticePolytope;
use crate::scalar::{factorial, LatticeInt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub tag: &'static str,
    pub passed: bool,
    /// Soft diagnostics are reported but never abort the construction.
    pub hard: bool,
    pub detail: String,
}

impl Diagnostic {
    fn hard(tag: &'static str, passed: bool, detail: String) -> Self {
        Diagnostic { tag, passed, hard: true, detail }
    }

    fn soft(tag: &'static str, passed: bool, detail: String) -> Self {
        Diagnostic { tag, passed, hard: false, detail }
    }
}

fn push_checked(diags: &mut Vec<Diagnostic>, d: Diagnostic) -> Result<()> {
    let failed = d.hard && !d.passed;
    let err = failed.then(|| Error::construction(d.tag, d.detail.clone()));
    diags.push(d);
    err.map_or(Ok(()), Err)
}

/// The `r` with `|P_{d,r}| <= w/2 < |P_{d,r+1}|`.
pub fn choose_r(d: usize, w: u64) -> Result<i64> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension must be >= 2, got {d}")));
    }
    if w.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("w must be odd, got {w}")));
    }
    let first = paraboloid_cap_count(d, 1)?;
    if 2 * first > w {
        return Err(Error::construction("Eq27", format!("w = {w} < 2|P_{{d,1}}| = {}", 2 * first)));
    }
    let mut r = 1;
    while 2 * paraboloid_cap_count(d, r + 1)? <= w {
        r += 1;
    }
    Ok(r)
}

/// `u = w - 2|P_{d,r}| + |B_{d,r} ∩ Z^d|`, checked to be even, nonnegative
/// and below `5r |B_{d,r+1} ∩ Z^d|`.
pub fn slack_u(d: usize, w: u64, r: i64) -> Result<u64> {
    let p = paraboloid_cap_count(d, r)? as i128;
    let b = base_disk_count(d, r)? as i128;
    let u = w as i128 - 2 * p + b;
    let cap = 5 * r as i128 * base_disk_count(d, r + 1)? as i128;
    if u < 0 || u % 2 != 0 || u >= cap {
        return Err(Error::construction("Eq31", format!("u = {u} must be even with 0 <= u < 5r|B_{{d,r+1}}| = {cap}")));
    }
    Ok(u as u64)
}

/// Everything that does not depend on the chosen subset `S`.
#[derive(Clone, Debug)]
pub struct Theorem1Setup<T> {
    pub d: usize,
    pub w: u64,
    pub r: i64,
    pub u: u64,
    pub base_points: Vec<IntegerPoint<T>>,
    pub p_dr: LatticePolytope<T>,
    pub v_prime: Vec<IntegerPoint<T>>,
    pub h: LatticePolytope<T>,
    pub h_prime: LatticePolytope<T>,
    chain: PeelChain<T>,
    pub diagnostics: Vec<Diagnostic>,
}

/// One member `P_S` with all intermediate polytopes.
#[derive(Clone, Debug)]
pub struct Theorem1Instance<T> {
    pub subset: Vec<IntegerPoint<T>>,
    /// `P'_{d,r}`.
    pub p_dr_prime: LatticePolytope<T>,
    /// The peeled polytope `P`, `H' ⊆ P ⊆ H`.
    pub peeled: LatticePolytope<T>,
    /// `P' = conv(P ∪ P'_{d,r})`.
    pub half: LatticePolytope<T>,
    /// `P_S = conv(P' ∪ -P')`.
    pub result: LatticePolytope<T>,
    pub diagnostics: Vec<Diagnostic>,
}

impl<T: LatticeInt> Theorem1Setup<T> {
    pub fn new(d: usize, w: u64) -> Result<Self> {
        let mut diagnostics = Vec::new();
        let r = choose_r(d, w)?;
        let p_r = paraboloid_cap_count(d, r)?;
        let p_next = paraboloid_cap_count(d, r + 1)?;
        push_checked(&mut diagnostics, Diagnostic::hard("Eq27", true, format!("|P_dr| = {p_r} <= w/2 < {p_next}, r = {r}")))?;
        let u = slack_u(d, w, r)?;
        let b = base_disk_count(d, r)?;
        let b_next = base_disk_count(d, r + 1)?;
        push_checked(&mut diagnostics, Diagnostic::hard("Eq31", true, format!("u = {u}, 5r|B_{{d,r+1}}| = {}", 5 * r as usize * b_next)))?;

        let base_points = base_disk_points(d, r)?;
        let p_dr = k_polytope(d, r)?;
        let v_prime = prime_vertices_of(&p_dr);
        push_checked(
            &mut diagnostics,
            Diagnostic::hard("Eq32", 2 * v_prime.len() < b, format!("|V'| = {}, |B| = {b}", v_prime.len())),
        )?;

        let h = h_polytope(d, r)?;
        let h_prime = h_prime_polytope(d, r)?;
        let nested = h_prime.is_subset_of(&h);
        push_checked(&mut diagnostics, Diagnostic::hard("Eq36", nested, "H' ⊆ H".to_string()))?;
        let budget = h.num_lattice_points() - h_prime.num_lattice_points();
        let eq25 = 3 * r as usize * b_next;
        diagnostics.push(Diagnostic::soft(
            "Eq25",
            budget >= eq25,
            format!("|H| - |H'| = {budget} vs 3r|B_{{d,r+1}}| = {eq25}"),
        ));
        let need = u as usize / 2 + v_prime.len();
        diagnostics.push(Diagnostic::soft(
            "Eq36-budget",
            need <= budget,
            format!("u/2 + |V'| = {need} vs |H| - |H'| = {budget}"),
        ));
        let chain = peel_chain(&h, &h_prime)?;
        Ok(Theorem1Setup { d, w, r, u, base_points, p_dr, v_prime, h, h_prime, chain, diagnostics })
    }

    /// `|H| - |H'|`, the largest peel count.
    pub fn peel_budget(&self) -> usize {
        self.chain.max_k()
    }

    /// Every subset of `V'` passes the peel-count check.
    pub fn all_subsets_feasible(&self) -> bool {
        self.u as usize / 2 + self.v_prime.len() <= self.peel_budget()
    }

    pub fn member(&self, subset: &[IntegerPoint<T>]) -> Result<Theorem1Instance<T>> {
        let d = self.d;
        let set: BTreeSet<&IntegerPoint<T>> = subset.iter().collect();
        if set.len() != subset.len() || subset.iter().any(|v| !self.v_prime.contains(v)) {
            return Err(Error::InvalidInput("subset must consist of distinct points of V'".into()));
        }
        let subset: Vec<IntegerPoint<T>> = set.into_iter().cloned().collect();
        let j = subset.len();
        let mut diagnostics = Vec::new();

        let kept: Vec<IntegerPoint<T>> =
            self.p_dr.lattice_points().iter().filter(|p| subset.binary_search(p).is_err()).cloned().collect();
        let p_dr_prime = LatticePolytope::convex_hull(&kept, d)?;
        let n_dr = self.p_dr.num_lattice_points();
        push_checked(
            &mut diagnostics,
            Diagnostic::hard(
                "Eq35",
                p_dr_prime.num_lattice_points() + j == n_dr,
                format!("|P'_dr| = {} = {n_dr} - {j}", p_dr_prime.num_lattice_points()),
            ),
        )?;

        let k = self.u as usize / 2 + j;
        push_checked(
            &mut diagnostics,
            Diagnostic::hard("Eq36", k <= self.peel_budget(), format!("k = u/2 + j = {k} <= |H| - |H'| = {}", self.peel_budget())),
        )?;
        let peeled = self.chain.member(k)?;
        let n_hp = self.h_prime.num_lattice_points();
        let chain_ok = self.h_prime.is_subset_of(&peeled) && peeled.is_subset_of(&self.h);
        push_checked(&mut diagnostics, Diagnostic::hard("Eq36", chain_ok, "H' ⊆ P ⊆ H".into()))?;
        push_checked(
            &mut diagnostics,
            Diagnostic::hard(
                "Eq37",
                peeled.num_lattice_points() == n_hp + k,
                format!("|P| = {} = |H'| + u/2 + j = {}", peeled.num_lattice_points(), n_hp + k),
            ),
        )?;

        let half = peeled.union_hull(&p_dr_prime)?;
        let union: BTreeSet<&IntegerPoint<T>> = peeled.lattice_points().iter().chain(p_dr_prime.lattice_points()).collect();
        let exact = half.num_lattice_points() == union.len() && half.lattice_points().iter().all(|p| union.contains(p));
        push_checked(
            &mut diagnostics,
            Diagnostic::hard("Eq38", exact, format!("conv(P ∪ P'_dr) has {} points, the union {}", half.num_lattice_points(), union.len())),
        )?;
        let slices = half.lattice_points().iter().all(|z| {
            let mut shifted = z.coords().to_vec();
            shifted[0] = T::zero();
            half.lattice_points().binary_search(&IntegerPoint::new(shifted)).is_ok()
        });
        push_checked(&mut diagnostics, Diagnostic::hard("Eq38", slices, "P' ∩ H_i - i e_1 ⊆ P' ∩ H_0".into()))?;
        let target_half = n_dr + self.u as usize / 2;
        push_checked(
            &mut diagnostics,
            Diagnostic::hard(
                "Eq39",
                half.num_lattice_points() == target_half,
                format!("|P'| = {} = |P_dr| + u/2 = {target_half}", half.num_lattice_points()),
            ),
        )?;

        let result = half.union_hull(&half.negate())?;
        let centered = result.symmetry_center().is_some_and(|c| c.is_zero());
        let ok = result.num_lattice_points() as u64 == self.w
            && result.num_lattice_points() == 2 * half.num_lattice_points() - self.base_points.len();
        push_checked(
            &mut diagnostics,
            Diagnostic::hard("Eq40", ok && centered, format!("|P_S| = {} (w = {}), centered at origin: {centered}", result.num_lattice_points(), self.w)),
        )?;

        let ell = T::int(2 * self.r * self.r + 1);
        let e_d = IntegerPoint::unit(d, d - 1);
        let diameter = result.lattice_diameter()?;
        let ell_ok = diameter.0 == ell && diameter.1.len() == 1 && diameter.1.contains(&e_d);
        diagnostics.push(Diagnostic::soft(
            "LatticeDiameter",
            ell_ok,
            format!("ℓ = {} along {} direction(s), expected 2r^2+1 = {ell} along e_d only", diameter.0, diameter.1.len()),
        ));

        Ok(Theorem1Instance { subset, p_dr_prime, peeled, half, result, diagnostics })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d,
            "w": self.w,
            "r": self.r,
            "u": self.u,
            "base_points": self.base_points,
            "P_dr": polytope_to_json(&self.p_dr),
            "V_prime": self.v_prime,
            "H": polytope_to_json(&self.h),
            "H_prime": polytope_to_json(&self.h_prime),
            "peel_budget": self.peel_budget(),
            "diagnostics": self.diagnostics,
        })
    }
}

impl<T: LatticeInt> Theorem1Instance<T> {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "subset": self.subset,
            "P_dr_prime": polytope_to_json(&self.p_dr_prime),
            "P": polytope_to_json(&self.peeled),
            "P_half": polytope_to_json(&self.half),
            "result": polytope_to_json(&self.result),
            "cardinality": self.result.num_lattice_points(),
            "diagnostics": self.diagnostics,
        })
    }
}

/// `P_S` for `S ⊆ V'_{d, choose_r(d, w)}`.
pub fn theorem1_polytope<T: LatticeInt>(d: usize, w: u64, subset: &[IntegerPoint<T>]) -> Result<(Theorem1Setup<T>, Theorem1Instance<T>)> {
    let setup = Theorem1Setup::new(d, w)?;
    let member = setup.member(subset)?;
    Ok((setup, member))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetSelection {
    All,
    /// Up to `limit` distinct subsets, drawn with a seeded generator; all
    /// subsets when there are at most `limit`.
    Sample { limit: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct Theorem1Family<T> {
    pub setup: Theorem1Setup<T>,
    pub members: Vec<Theorem1Instance<T>>,
    pub canonical_forms: Vec<CanonicalForm>,
}

impl<T> Theorem1Family<T> {
    pub fn class_count(&self) -> usize {
        self.canonical_forms.iter().collect::<BTreeSet<_>>().len()
    }

    /// `2^d (d-1)!`, the bound on members per class.
    pub fn class_size_bound(&self) -> u64 {
        (1u64 << self.setup.d) * factorial(self.setup.d as u32 - 1)
    }

    /// `2^{|V'|} / (2^d (d-1)!)`, the count guaranteed for the full family.
    pub fn guaranteed_lower_bound(&self) -> f64 {
        2f64.powi(self.setup.v_prime.len() as i32) / self.class_size_bound() as f64
    }

    /// `ceil(|built| / (2^d (d-1)!))`: the same argument applied to the
    /// members actually built.
    pub fn built_lower_bound(&self) -> u64 {
        (self.members.len() as u64).div_ceil(self.class_size_bound())
    }
}

fn choose_subsets(n: usize, selection: SubsetSelection) -> Result<Vec<Vec<usize>>> {
    let full = |n: usize| -> Vec<Vec<usize>> {
        (0u64..1 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
    };
    match selection {
        SubsetSelection::All => {
            if n >= 63 {
                return Err(Error::ResourceCap { what: "family subsets".into(), size: usize::MAX, cap: crate::limits::max_points() });
            }
            check_size("family subsets", 1usize << n)?;
            Ok(full(n))
        }
        SubsetSelection::Sample { limit, seed } => {
            if n < 63 && (1u64 << n) <= limit as u64 {
                return Ok(full(n));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut chosen: BTreeSet<Vec<usize>> = BTreeSet::new();
            while chosen.len() < limit {
                chosen.insert((0..n).filter(|_| rng.gen_bool(0.5)).collect());
            }
            Ok(chosen.into_iter().collect())
        }
    }
}

/// Members `P_S` for the selected subsets `S ⊆ V'`, built concurrently, with
/// their canonical forms.
pub fn theorem1_family<T: LatticeInt>(d: usize, w: u64, selection: SubsetSelection) -> Result<Theorem1Family<T>> {
    let setup = Theorem1Setup::<T>::new(d, w)?;
    let subsets = choose_subsets(setup.v_prime.len(), selection)?;
    let built: Vec<Result<(Theorem1Instance<T>, CanonicalForm)>> = subsets
        .par_iter()
        .map(|idx| {
            let s: Vec<IntegerPoint<T>> = idx.iter().map(|&i| setup.v_prime[i].clone()).collect();
            let m = setup.member(&s)?;
            let c = canonical_form(&m.result);
            Ok((m, c))
        })
        .collect();
    // first failure in subset order, independent of scheduling
    let built = built.into_iter().collect::<Result<Vec<_>>>()?;
    let (members, canonical_forms) = built.into_iter().unzip();
    Ok(Theorem1Family { setup, members, canonical_forms })
}
