//! Reductive monoids from weight data.
//!
//! From a finite multiset of cocharacter weights this module produces the
//! weight cone, the central character `nu` pairing to 1 with every weight,
//! the character semigroup `X(M_T)` with its Hilbert basis, dominant orbit
//! generators, the toric ideal of the semigroup, Levi restrictions with
//! orbit decompositions, modulus-shift exponents, monomial resolution charts
//! and the rook monoid of partial permutation matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cones::{Fan, RationalCone};
use crate::linalg::{self, Q};
use crate::rootdata::{GroupSpec, LeviDatum, RootDatum};
use crate::{Error, Result};

/// Representation descriptors with built-in weight multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSpec {
    /// `Sym^n` of `GL_2`, realized on the fibered cover `GL_2 x_{G_m} G_m`.
    Sym(i64),
    /// The standard representation of `GL_n`.
    Std(usize),
    /// Explicit weights (ambient cocharacter coordinates) over a given group.
    Custom,
}

#[derive(Debug, Clone)]
pub struct WeightData {
    pub datum: RootDatum,
    /// Weight multiset in cocharacter-lattice coordinates.
    pub weights: Vec<Vec<i64>>,
    /// Whether the multiset is stable under the Weyl group (checked, reported).
    pub w_stable: bool,
    pub rep: RepSpec,
}

impl WeightData {
    pub fn new(datum: RootDatum, ambient_weights: &[Vec<Q>]) -> Result<Self> {
        if ambient_weights.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let weights: Result<Vec<Vec<i64>>> = ambient_weights
            .iter()
            .map(|w| datum.cochar_lattice.from_ambient(w))
            .collect();
        let weights = weights?;
        let w_stable = weights_are_w_stable(&datum, &weights);
        Ok(WeightData { datum, weights, w_stable, rep: RepSpec::Custom })
    }

    /// Weights `x^k y^(n-k)` of `Sym^n`, over the `n`-cover of `GL_2`.
    pub fn sym(n: i64) -> Result<Self> {
        let datum = crate::rootdata::build_root_datum(&GroupSpec::Gl2SymCover(n))?;
        let mut weights = Vec::new();
        for k in 0..=n {
            let amb = vec![linalg::qint(n - k), linalg::qint(k)];
            weights.push(datum.cochar_lattice.from_ambient(&amb)?);
        }
        let w_stable = weights_are_w_stable(&datum, &weights);
        Ok(WeightData { datum, weights, w_stable, rep: RepSpec::Sym(n) })
    }

    /// Standard-representation weights `e_1, ..., e_n` of `GL_n`.
    pub fn std_gl(n: usize) -> Result<Self> {
        let datum = crate::rootdata::build_root_datum(&GroupSpec::GL(n))?;
        let weights: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let w_stable = weights_are_w_stable(&datum, &weights);
        Ok(WeightData { datum, weights, w_stable, rep: RepSpec::Std(n) })
    }

    /// The cone in cocharacter space generated by the weights.
    pub fn weight_cone(&self) -> Result<RationalCone> {
        RationalCone::from_int_generators(self.datum.cochar_lattice.clone(), &self.weights)
    }

    /// The character `nu` with `<nu, w> = 1` for every weight, as an
    /// integral Weyl-invariant character-lattice point. `None` when no such
    /// lattice character exists.
    pub fn find_nu(&self) -> Option<Vec<i64>> {
        let rank = self.datum.rank();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut rhs: Vec<i64> = Vec::new();
        let mut distinct: BTreeSet<Vec<i64>> = BTreeSet::new();
        for w in &self.weights {
            if distinct.insert(w.clone()) {
                rows.push(w.clone());
                rhs.push(1);
            }
        }
        for g in &self.datum.weyl_gens_char {
            // (g - I) nu = 0, rows of g act on char coordinates.
            for i in 0..rank {
                let mut row = g[i].clone();
                row[i] -= 1;
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                    rhs.push(0);
                }
            }
        }
        linalg::solve_integer(&rows, &rhs)
    }

    /// The dual cone `sigma_vee` in the character lattice with its Hilbert
    /// basis (the generators of `X(M_T)`).
    pub fn character_semigroup(&self) -> Result<(RationalCone, Vec<Vec<i64>>)> {
        let xi = self.weight_cone()?;
        if !xi.strictly_convex {
            return Err(Error::NotStrictlyConvex);
        }
        let sigma_vee = xi.dual(&self.datum.char_lattice)?;
        let hb = sigma_vee.hilbert_basis()?;
        Ok((sigma_vee, hb))
    }

    /// Minimal list of dominant characters whose Weyl orbits generate the
    /// character semigroup; `nu` is listed first whenever it belongs to the
    /// minimal list.
    pub fn orbit_generators(&self) -> Result<Vec<Vec<i64>>> {
        let (sigma_vee, hb) = self.character_semigroup()?;
        // Positive functional on sigma_vee minus 0: sum of its facet normals.
        let ell = positive_functional(&sigma_vee);
        // Orbit classification of the Hilbert basis.
        let mut unseen: BTreeSet<Vec<i64>> = hb.iter().cloned().collect();
        let mut reps: Vec<Vec<i64>> = Vec::new();
        while let Some(p) = unseen.iter().next().cloned() {
            let orbit = self.datum.weyl_orbit_char(&p);
            for q in &orbit {
                unseen.remove(q);
            }
            reps.push(self.datum.dominant_representative(&p));
        }
        reps.sort_by_key(|r| (linalg::dot(&ell, r), r.clone()));
        reps.dedup();

        let nu = self.find_nu();
        // Greedy minimization: drop any rep whose orbits are not needed.
        let mut active: Vec<bool> = vec![true; reps.len()];
        loop {
            let mut dropped = false;
            for i in (0..reps.len()).rev() {
                if !active[i] {
                    continue;
                }
                active[i] = false;
                if !self.orbits_generate(&reps, &active, &hb, &ell) {
                    active[i] = true;
                } else {
                    dropped = true;
                }
            }
            if !dropped {
                break;
            }
        }
        let mut result: Vec<Vec<i64>> = reps
            .into_iter()
            .zip(active)
            .filter_map(|(r, a)| a.then_some(r))
            .collect();
        if let Some(nu) = nu {
            if let Some(pos) = result.iter().position(|r| r == &nu) {
                let v = result.remove(pos);
                result.insert(0, v);
            }
        }
        Ok(result)
    }

    fn orbits_generate(
        &self,
        reps: &[Vec<i64>],
        active: &[bool],
        targets: &[Vec<i64>],
        ell: &[i64],
    ) -> bool {
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for (r, &a) in reps.iter().zip(active) {
            if a {
                gens.extend(self.datum.weyl_orbit_char(r));
            }
        }
        gens.sort();
        gens.dedup();
        targets
            .iter()
            .all(|t| is_nonneg_combination(t, &gens, ell))
    }

    /// Assemble the full classification datum.
    pub fn renner_datum(&self) -> Result<RennerDatum> {
        let weight_cone = self.weight_cone()?;
        let nu = self.find_nu();
        let (character_cone, hilbert_basis) = self.character_semigroup()?;
        if let Some(nu) = &nu {
            if !character_cone.contains(nu) {
                return Err(Error::Unsupported("nu must lie in the dual cone".into()));
            }
        }
        let orbit_generators = self.orbit_generators()?;
        let colors = self.datum.simple_roots.clone();
        Ok(RennerDatum {
            group: self.datum.name.clone(),
            weight_cone,
            nu,
            character_cone,
            hilbert_basis,
            orbit_generators,
            colors,
        })
    }

    /// Explicit equations where the family admits them, the abstract
    /// classification datum otherwise.
    pub fn monoid_presentation(&self) -> Result<Presentation> {
        match self.rep {
            RepSpec::Sym(n) => {
                let gens = self.sym_presentation_generators()?;
                let ideal = toric_ideal(&gens, default_degree_bound(&gens))?;
                Ok(Presentation::SymFamily {
                    n,
                    toric: ideal,
                    monoid_equation: sym_monoid_equation(n),
                })
            }
            _ if self.datum.is_torus() => {
                let (_, hb) = self.character_semigroup()?;
                let ideal = toric_ideal(&hb, default_degree_bound(&hb))?;
                Ok(Presentation::Torus { toric: ideal })
            }
            _ => Ok(Presentation::Abstract {
                datum: Box::new(self.renner_datum()?),
            }),
        }
    }

    /// The `x, y, z` coordinates of the Sym^n family: the characters `(1,0)`,
    /// `(0,1)` and `nu = (1/n, 1/n)`. This is the Hilbert basis for n >= 2;
    /// for n = 1 the reducible `z = x + y` is still a coordinate of the
    /// family's embedding, so it is kept.
    pub fn sym_presentation_generators(&self) -> Result<Vec<Vec<i64>>> {
        let nu = self.find_nu().ok_or(Error::NuAbsent)?;
        let x = self
            .datum
            .char_lattice
            .from_ambient(&[linalg::qint(1), linalg::qint(0)])?;
        let y = self
            .datum
            .char_lattice
            .from_ambient(&[linalg::qint(0), linalg::qint(1)])?;
        let (_, hb) = self.character_semigroup()?;
        let mut gens = vec![x, y, nu];
        for h in &hb {
            if !gens.contains(h) {
                gens.push(h.clone());
            }
        }
        Ok(gens)
    }

    /// Reinterpret the weights over a Levi subgroup and decompose each
    /// Weyl orbit of orbit generators into Levi orbits.
    pub fn levi_restriction(&self, levi: &LeviDatum) -> Result<LeviRestriction> {
        let restricted = WeightData {
            datum: levi.datum.clone(),
            weights: self.weights.clone(),
            w_stable: weights_are_w_stable(&levi.datum, &self.weights),
            rep: RepSpec::Custom,
        };
        let lambda = self.orbit_generators()?;
        let mut decomposition = Vec::new();
        for li in &lambda {
            let full_orbit = self.datum.weyl_orbit_char(li);
            decomposition.push(OrbitSplit {
                generator: li.clone(),
                levi_orbits: split_into_orbits(&levi.datum, &full_orbit),
            });
        }
        Ok(LeviRestriction {
            restricted,
            decomposition,
            same_toric_variety: true,
        })
    }

    /// Dominant extremal weight of the multiset (the highest weight when the
    /// multiset comes from an irreducible representation).
    pub fn highest_weight(&self) -> Result<Vec<i64>> {
        let mut dominant: Vec<Vec<i64>> = self
            .weights
            .iter()
            .filter(|w| self.is_dominant_cochar(w))
            .cloned()
            .collect();
        if dominant.is_empty() {
            return Err(Error::InvalidParameter(
                "weight multiset has no dominant member".into(),
            ));
        }
        dominant.sort_by_key(|w| {
            let height: Q = self
                .datum
                .simple_roots
                .iter()
                .map(|&i| self.datum.pairing(&self.datum.roots[i], w))
                .sum();
            (std::cmp::Reverse(height), w.clone())
        });
        Ok(dominant.remove(0))
    }

    fn is_dominant_cochar(&self, mu: &[i64]) -> bool {
        self.datum
            .simple_roots
            .iter()
            .all(|&i| self.datum.pairing(&self.datum.roots[i], mu) >= Q::zero())
    }

    /// Shift exponents of the modulus characters `delta_{G,rho}` and
    /// `delta_{L,rho_L}`, with the exponent-vector forms used by the
    /// Godement-Jacquet comparison.
    pub fn compute_shifts(&self, levi: Option<&LeviDatum>) -> Result<ShiftData> {
        let nu = self.find_nu().ok_or(Error::NuAbsent)?;
        let lambda = self.highest_weight()?;
        let two_eta_g: Vec<Q> = self
            .datum
            .half_sum_positive()
            .iter()
            .map(|c| c * linalg::qint(2))
            .collect();
        let e_g = self.datum.pairing_ambient_char(&two_eta_g, &lambda);
        let nu_amb = self.datum.char_lattice.to_ambient(&nu);
        let delta_g_vector: Vec<Q> = nu_amb.iter().map(|c| c * &e_g).collect();

        let levi_part = match levi {
            None => None,
            Some(l) => {
                let two_eta_l: Vec<Q> = l
                    .datum
                    .half_sum_positive()
                    .iter()
                    .map(|c| c * linalg::qint(2))
                    .collect();
                let orbit = self.datum.weyl_orbit_char(&lambda);
                let levi_orbits = split_into_orbit_sets(&l.datum, &orbit);
                let mut e_l_terms = Vec::new();
                let mut highest_weights = Vec::new();
                for (rep, _) in &levi_orbits {
                    e_l_terms.push(l.datum.pairing_ambient_char(&two_eta_l, rep));
                    highest_weights.push(rep.clone());
                }
                let e_l: Q = e_l_terms.iter().cloned().sum();
                let nu_vectors = levi_orbit_central_characters(&l.datum, &levi_orbits);
                let (delta_l_vector, ratio_vector) = match &nu_vectors {
                    Some(vs) => {
                        let rank = self.datum.rank();
                        let mut dl = vec![Q::zero(); rank];
                        for (v, e) in vs.iter().zip(&e_l_terms) {
                            for i in 0..rank {
                                dl[i] += &v[i] * e;
                            }
                        }
                        let ratio: Vec<Q> = delta_g_vector
                            .iter()
                            .zip(&dl)
                            .map(|(a, b)| a - b)
                            .collect();
                        (Some(dl), Some(ratio))
                    }
                    None => (None, None),
                };
                let delta_p_vector = modulus_vector(&self.datum, &l.datum);
                Some(LeviShift {
                    highest_weights,
                    e_l_terms,
                    nu_g_over_l_exponent: &e_g - &e_l,
                    e_l,
                    nu_vectors,
                    delta_l_vector,
                    ratio_vector,
                    delta_p_vector,
                })
            }
        };
        Ok(ShiftData {
            highest_weight: lambda,
            e_g,
            nu,
            delta_g_vector,
            levi: levi_part,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RennerDatum {
    pub group: String,
    /// `xi(rho)` in cocharacter coordinates.
    pub weight_cone: RationalCone,
    /// Central character in char coordinates, when it exists.
    pub nu: Option<Vec<i64>>,
    /// `sigma_vee` in character coordinates.
    pub character_cone: RationalCone,
    pub hilbert_basis: Vec<Vec<i64>>,
    pub orbit_generators: Vec<Vec<i64>>,
    /// Colors of the monoid: all simple reflections.
    pub colors: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum Presentation {
    SymFamily {
        n: i64,
        toric: BinomialIdeal,
        /// Equation of the closure inside `End(V_std) x A^1`.
        monoid_equation: String,
    },
    Torus {
        toric: BinomialIdeal,
    },
    Abstract {
        datum: Box<RennerDatum>,
    },
}

#[derive(Debug, Clone)]
pub struct OrbitSplit {
    pub generator: Vec<i64>,
    /// Dominant representatives of the Levi orbits.
    pub levi_orbits: Vec<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct LeviRestriction {
    pub restricted: WeightData,
    pub decomposition: Vec<OrbitSplit>,
    /// The restriction shares the toric variety `M_T`.
    pub same_toric_variety: bool,
}

#[derive(Debug, Clone)]
pub struct ShiftData {
    pub highest_weight: Vec<i64>,
    /// `<2 eta_G, lambda>`.
    pub e_g: Q,
    pub nu: Vec<i64>,
    /// Exponent vector of `delta_{G,rho}` on the torus.
    pub delta_g_vector: Vec<Q>,
    pub levi: Option<LeviShift>,
}

#[derive(Debug, Clone)]
pub struct LeviShift {
    /// Dominant representatives of the Levi orbit decomposition of `W.lambda`.
    pub highest_weights: Vec<Vec<i64>>,
    /// `<2 eta_L, lambda_j>` per Levi highest weight.
    pub e_l_terms: Vec<Q>,
    pub e_l: Q,
    /// Scalar difference `<2 eta_G, lambda> - <2 eta_L, sum lambda_j>`.
    pub nu_g_over_l_exponent: Q,
    /// Central characters of the Levi summands as torus exponent vectors.
    pub nu_vectors: Option<Vec<Vec<Q>>>,
    pub delta_l_vector: Option<Vec<Q>>,
    /// Exponent vector of `nu_{G/L,rho}` on the torus.
    pub ratio_vector: Option<Vec<Q>>,
    /// Exponent vector of `delta_P`.
    pub delta_p_vector: Vec<Q>,
}

fn weights_are_w_stable(datum: &RootDatum, weights: &[Vec<i64>]) -> bool {
    let mut sorted = weights.to_vec();
    sorted.sort();
    for g in &datum.weyl_gens_cochar {
        let mut mapped: Vec<Vec<i64>> = weights.iter().map(|w| linalg::mat_vec(g, w)).collect();
        mapped.sort();
        if mapped != sorted {
            return false;
        }
    }
    true
}

fn positive_functional(cone: &RationalCone) -> Vec<i64> {
    let dim = cone.lattice.rank();
    let mut ell = vec![0i64; dim];
    for f in &cone.facets {
        for i in 0..dim {
            ell[i] += f[i];
        }
    }
    ell
}

/// Is `target` a nonnegative integer combination of `gens`? Bounded search
/// pruned by a functional that is positive on all generators.
fn is_nonneg_combination(target: &[i64], gens: &[Vec<i64>], ell: &[i64]) -> bool {
    fn rec(target: Vec<i64>, gens: &[Vec<i64>], ell: &[i64], from: usize) -> bool {
        if target.iter().all(|&x| x == 0) {
            return true;
        }
        let budget = linalg::dot(ell, &target);
        if budget < 0 {
            return false;
        }
        for (i, g) in gens.iter().enumerate().skip(from) {
            let cost = linalg::dot(ell, g);
            if cost <= 0 || cost > budget {
                continue;
            }
            let next: Vec<i64> = target.iter().zip(g).map(|(t, x)| t - x).collect();
            if rec(next, gens, ell, i) {
                return true;
            }
        }
        false
    }
    rec(target.to_vec(), gens, ell, 0)
}

fn split_into_orbits(levi: &RootDatum, orbit: &[Vec<i64>]) -> Vec<Vec<i64>> {
    split_into_orbit_sets(levi, orbit)
        .into_iter()
        .map(|(rep, _)| rep)
        .collect()
}

/// Decompose a set of char points into Levi orbits; returns (dominant rep, orbit).
fn split_into_orbit_sets(
    levi: &RootDatum,
    points: &[Vec<i64>],
) -> Vec<(Vec<i64>, Vec<Vec<i64>>)> {
    let mut remaining: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    let mut out = Vec::new();
    while let Some(p) = remaining.iter().next().cloned() {
        let orbit = levi.weyl_orbit_char(&p);
        for q in &orbit {
            remaining.remove(q);
        }
        let rep = dominant_rep_for(levi, &p);
        out.push((rep, orbit));
    }
    out.sort();
    out
}

fn dominant_rep_for(levi: &RootDatum, p: &[i64]) -> Vec<i64> {
    let orbit = levi.weyl_orbit_char(p);
    let mut doms: Vec<Vec<i64>> = orbit
        .into_iter()
        .filter(|x| levi.is_dominant_char(x))
        .collect();
    doms.sort();
    doms.remove(0)
}

/// Per Levi orbit, the character pairing to 1 on that orbit, to 0 on the
/// others, invariant under the Levi Weyl group (central character of the
/// corresponding summand). `None` when the system is not solvable.
fn levi_orbit_central_characters(
    levi: &RootDatum,
    orbits: &[(Vec<i64>, Vec<Vec<i64>>)],
) -> Option<Vec<Vec<Q>>> {
    let rank = levi.rank();
    let mut out = Vec::new();
    for (j, _) in orbits.iter().enumerate() {
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        for (k, (_, orbit_k)) in orbits.iter().enumerate() {
            for mu in orbit_k {
                rows.push(levi.cochar_lattice.to_ambient(mu));
                rhs.push(if k == j { linalg::qint(1) } else { Q::zero() });
            }
        }
        // Weyl invariance as a character: v . (g mu) = v . mu for all mu.
        for g in &levi.weyl_gens_cochar {
            if let Some(a_amb) = ambient_cochar_action(levi, g) {
                for r in 0..rank {
                    let mut row: Vec<Q> = (0..rank).map(|c| a_amb[c][r].clone()).collect();
                    row[r] -= linalg::qint(1);
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                        rhs.push(Q::zero());
                    }
                }
            } else {
                return None;
            }
        }
        match linalg::solve_rational(&rows, &rhs) {
            Ok((sol, _)) => out.push(sol),
            Err(_) => return None,
        }
    }
    Some(out)
}

/// Ambient matrix of a Weyl generator acting on cocharacter space.
fn ambient_cochar_action(datum: &RootDatum, g: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let rank = datum.rank();
    let b = datum.cochar_lattice.basis_vectors();
    // Images of the lattice basis vectors, ambient coordinates.
    let mut img = Vec::new();
    for j in 0..rank {
        let mut e = vec![0i64; rank];
        e[j] = 1;
        img.push(datum.cochar_lattice.to_ambient(&linalg::mat_vec(g, &e)));
    }
    // Solve A * b_j = img_j for the ambient matrix A.
    let bmat: Vec<Vec<Q>> = (0..rank)
        .map(|r| (0..rank).map(|c| b[c][r].clone()).collect())
        .collect();
    let binv = linalg::invert_rational(&bmat).ok()?;
    let mut a = vec![vec![Q::zero(); rank]; rank];
    for r in 0..rank {
        for c in 0..rank {
            let mut acc = Q::zero();
            for k in 0..rank {
                acc += &img[k][r] * &binv[k][c];
            }
            a[r][c] = acc;
        }
    }
    Some(a)
}

/// Sum of the positive roots of G not in L, as an ambient char vector
/// (exponent vector of `delta_P`).
fn modulus_vector(g: &RootDatum, l: &RootDatum) -> Vec<Q> {
    let rank = g.rank();
    let l_roots: BTreeSet<Vec<i64>> = l.roots.iter().cloned().collect();
    let mut acc = vec![Q::zero(); rank];
    for idx in g.positive_roots() {
        if l_roots.contains(&g.roots[idx]) {
            continue;
        }
        let amb = g.char_lattice.to_ambient(&g.roots[idx]);
        for i in 0..rank {
            acc[i] += &amb[i];
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Toric ideals
// ---------------------------------------------------------------------------

/// A binomial ideal presented by exponent-vector pairs `(u_plus, u_minus)`.
#[derive(Debug, Clone)]
pub struct BinomialIdeal {
    pub variables: Vec<String>,
    pub binomials: Vec<(Vec<i64>, Vec<i64>)>,
    /// All fibers of total degree up to this bound are connected by the moves.
    pub verified_degree: usize,
}

pub fn variable_labels(k: usize) -> Vec<String> {
    match k {
        1 => vec!["X".into()],
        2 => vec!["X".into(), "Y".into()],
        3 => vec!["X".into(), "Y".into(), "Z".into()],
        _ => (1..=k).map(|i| format!("X{}", i)).collect(),
    }
}

pub fn default_degree_bound(gens: &[Vec<i64>]) -> usize {
    let max_coord = gens
        .iter()
        .flat_map(|g| g.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(1)
        .max(1) as usize;
    let rank = gens.first().map(Vec::len).unwrap_or(1);
    (3 * max_coord * rank).max(6)
}

/// Generators of the lattice-kernel ideal of the semigroup map, verified by
/// fiber connectivity (equivalently a graded dimension count) up to the
/// given total degree, completing the basis where a fiber is disconnected.
pub fn toric_ideal(gens: &[Vec<i64>], degree_bound: usize) -> Result<BinomialIdeal> {
    let k = gens.len();
    if k == 0 {
        return Err(Error::EmptyGenerators);
    }
    let d = gens[0].len();
    let rows: Vec<Vec<i64>> = (0..d).map(|i| (0..k).map(|j| gens[j][i]).collect()).collect();
    let mut moves: Vec<Vec<i64>> = linalg::kernel_basis(&rows)
        .into_iter()
        .map(|v| sign_normalize(&v))
        .collect();
    moves.sort();
    moves.dedup();

    // Enumerate exponent tuples of total degree <= bound, grouped by image.
    let mut fibers: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
    let mut tuple = vec![0i64; k];
    loop {
        let image: Vec<i64> = (0..d)
            .map(|i| (0..k).map(|j| tuple[j] * gens[j][i]).sum())
            .collect();
        fibers.entry(image).or_default().push(tuple.clone());
        // next tuple with sum <= degree_bound
        let mut pos = 0;
        loop {
            if pos == k {
                break;
            }
            tuple[pos] += 1;
            if tuple.iter().sum::<i64>() <= degree_bound as i64 {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }

    loop {
        let mut new_move: Option<Vec<i64>> = None;
        'fibers: for members in fibers.values() {
            if members.len() < 2 {
                continue;
            }
            let comps = fiber_components(members, &moves);
            if comps.len() > 1 {
                let a = &comps[0][0];
                let b = &comps[1][0];
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                new_move = Some(sign_normalize(&diff));
                break 'fibers;
            }
        }
        match new_move {
            Some(m) => {
                moves.push(m);
                moves.sort();
                moves.dedup();
            }
            None => break,
        }
    }

    let binomials = moves
        .into_iter()
        .filter(|m| m.iter().any(|&x| x != 0))
        .map(|m| {
            let plus: Vec<i64> = m.iter().map(|&x| x.max(0)).collect();
            let minus: Vec<i64> = m.iter().map(|&x| (-x).max(0)).collect();
            (plus, minus)
        })
        .collect();
    Ok(BinomialIdeal {
        variables: variable_labels(k),
        binomials,
        verified_degree: degree_bound,
    })
}

fn sign_normalize(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
        _ => v.to_vec(),
    }
}

fn fiber_components(members: &[Vec<i64>], moves: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let index: BTreeMap<&Vec<i64>, usize> =
        members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut seen = vec![false; members.len()];
    let mut comps = Vec::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(members[i].clone());
            for mv in moves {
                for dir in [1i64, -1] {
                    let next: Vec<i64> = members[i]
                        .iter()
                        .zip(mv)
                        .map(|(x, m)| x + dir * m)
                        .collect();
                    if next.iter().any(|&x| x < 0) {
                        continue;
                    }
                    if let Some(&j) = index.get(&next) {
                        if !seen[j] {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps.sort();
    comps
}

impl BinomialIdeal {
    /// Canonical string form, e.g. `XY-Z^2`; the zero ideal prints as `0`.
    pub fn to_display_string(&self) -> String {
        if self.binomials.is_empty() {
            return "0".into();
        }
        self.binomials
            .iter()
            .map(|(p, m)| format!("{}-{}", self.monomial(p), self.monomial(m)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn monomial(&self, exps: &[i64]) -> String {
        let mut s = String::new();
        for (v, &e) in self.variables.iter().zip(exps) {
            if e == 0 {
                continue;
            }
            s.push_str(v);
            if e > 1 {
                s.push_str(&format!("^{}", e));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Equation of the Sym^n monoid inside `End(V_std) x A^1`.
pub fn sym_monoid_equation(n: i64) -> String {
    if n == 1 {
        "X1X4-X2X3=X5".into()
    } else {
        format!("X1X4-X2X3=X5^{}", n)
    }
}

// ---------------------------------------------------------------------------
// Monomial charts of the resolved toric variety
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MonomialChart {
    /// Rays of the smooth cone, cochar coordinates.
    pub cone_rays: Vec<Vec<i64>>,
    /// `E[i][j] = <g_j, r_i>`: generator `g_j` is the monomial
    /// `prod_i z_i^{E[i][j]}` in the chart coordinates.
    pub exponent_matrix: Vec<Vec<i64>>,
    /// Jacobian valuation exponents per chart coordinate: row sums minus 1.
    pub jacobian_chart_exponents: Vec<i64>,
    /// The same Jacobian as exponents over the generator coordinates, when
    /// it is a monomial in them.
    pub jacobian_generator_exponents: Option<Vec<i64>>,
}

/// Per maximal smooth cone of the resolution, the monomial chart map onto
/// the semigroup generators and its Jacobian valuation exponents.
pub fn monomial_charts(
    w: &WeightData,
    fan: &Fan,
    generators: &[Vec<i64>],
) -> Result<Vec<MonomialChart>> {
    let mut charts = Vec::new();
    for cone in &fan.max_cones {
        if !cone.is_smooth() {
            return Err(Error::Unsupported("fan must be smooth".into()));
        }
        let d = cone.rays.len();
        let k = generators.len();
        let mut exponents = vec![vec![0i64; k]; d];
        for (i, ray) in cone.rays.iter().enumerate() {
            for (j, g) in generators.iter().enumerate() {
                let p = w.datum.pairing(g, ray);
                if !p.is_integer() || p < Q::zero() {
                    return Err(Error::Unsupported(
                        "generator does not extend to the chart".into(),
                    ));
                }
                exponents[i][j] = i64::try_from(&p.to_integer())
                    .map_err(|_| Error::InvalidParameter("exponent overflow".into()))?;
            }
        }
        let jac: Vec<i64> = exponents
            .iter()
            .map(|row| row.iter().sum::<i64>() - 1)
            .collect();
        let gen_exponents = solve_monomial_exponents(&exponents, &jac);
        charts.push(MonomialChart {
            cone_rays: cone.rays.clone(),
            exponent_matrix: exponents,
            jacobian_chart_exponents: jac,
            jacobian_generator_exponents: gen_exponents,
        });
    }
    Ok(charts)
}

/// Find nonnegative integers w with `E w = c`.
fn solve_monomial_exponents(e: &[Vec<i64>], c: &[i64]) -> Option<Vec<i64>> {
    let d = e.len();
    let k = if d == 0 { 0 } else { e[0].len() };
    let bound = c.iter().cloned().max().unwrap_or(0).max(0);
    fn rec(
        e: &[Vec<i64>],
        residual: Vec<i64>,
        j: usize,
        k: usize,
        bound: i64,
        acc: &mut Vec<i64>,
    ) -> Option<Vec<i64>> {
        if j == k {
            return residual.iter().all(|&x| x == 0).then(|| acc.clone());
        }
        for w in 0..=bound {
            let next: Vec<i64> = residual
                .iter()
                .enumerate()
                .map(|(i, &r)| r - w * e[i][j])
                .collect();
            if next.iter().any(|&x| x < 0) {
                break;
            }
            acc.push(w);
            if let Some(sol) = rec(e, next, j + 1, k, bound, acc) {
                return Some(sol);
            }
            acc.pop();
        }
        None
    }
    let mut acc = Vec::with_capacity(k);
    rec(e, c.to_vec(), 0, k, bound, &mut acc)
}

// ---------------------------------------------------------------------------
// Rook monoid
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RookMonoid {
    pub n: usize,
    pub cardinality: u64,
    pub unit_group_order: u64,
    pub idempotent_count: u64,
    /// Extended Bruhat cells `BxB` are indexed by the elements themselves.
    pub bruhat_cells: u64,
    /// Row assignments: `elements[e][row] = Some(col)` or empty row.
    pub elements: Vec<Vec<Option<usize>>>,
}

/// All n-by-n partial permutation matrices, with unit group `S_n` and the
/// idempotents (partial identities) counted by brute force.
pub fn rook_monoid(n: usize) -> Result<RookMonoid> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidParameter(
            "rook monoid supported for 1 <= n <= 4".into(),
        ));
    }
    let mut elements: Vec<Vec<Option<usize>>> = Vec::new();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    fn rec(
        row: usize,
        n: usize,
        used: &mut Vec<bool>,
        assignment: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if row == n {
            out.push(assignment.clone());
            return;
        }
        assignment[row] = None;
        rec(row + 1, n, used, assignment, out);
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                assignment[row] = Some(col);
                rec(row + 1, n, used, assignment, out);
                assignment[row] = None;
                used[col] = false;
            }
        }
    }
    let mut used = vec![false; n];
    rec(0, n, &mut used, &mut assignment, &mut elements);
    elements.sort();
    elements.dedup();

    let compose = |a: &[Option<usize>], b: &[Option<usize>]| -> Vec<Option<usize>> {
        a.iter().map(|x| x.and_then(|col| b[col])).collect()
    };
    let idempotent_count = elements.iter().filter(|e| compose(e, e) == **e).count() as u64;
    let unit_group_order = elements
        .iter()
        .filter(|e| e.iter().all(Option::is_some))
        .count() as u64;
    let cardinality = elements.len() as u64;
    Ok(RookMonoid {
        n,
        cardinality,
        unit_group_order,
        idempotent_count,
        bruhat_cells: cardinality,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qfrac, qint};

    #[test]
    fn sym_weight_cone_and_nu() {
        for n in 1..=6 {
            let w = WeightData::sym(n).unwrap();
            assert!(w.w_stable);
            let cone = w.weight_cone().unwrap();
            assert!(cone.strictly_convex);
            // Ambient ray directions are the coordinate axes.
            let amb = cone.ambient_rays();
            let dirs: Vec<Vec<Q>> = amb
                .iter()
                .map(|r| {
                    let norm: Q = r.iter().cloned().sum();
                    r.iter().map(|c| c / &norm).collect()
                })
                .collect();
            assert!(dirs.contains(&vec![qint(1), qint(0)]));
            assert!(dirs.contains(&vec![qint(0), qint(1)]));
            // nu = (1/n, 1/n)
            let nu = w.find_nu().unwrap();
            let nu_amb = w.datum.char_lattice.to_ambient(&nu);
            assert_eq!(nu_amb, vec![qfrac(1, n), qfrac(1, n)]);
            for wt in &w.weights {
                assert_eq!(w.datum.pairing(&nu, wt), qint(1));
            }
        }
    }

    #[test]
    fn sym_character_semigroup_matches_family() {
        for n in 2..=6 {
            let w = WeightData::sym(n).unwrap();
            let (cone, hb) = w.character_semigroup().unwrap();
            assert!(cone.strictly_convex);
            let amb: BTreeSet<Vec<Q>> = hb
                .iter()
                .map(|h| w.datum.char_lattice.to_ambient(h))
                .collect();
            let expected: BTreeSet<Vec<Q>> = [
                vec![qint(1), qint(0)],
                vec![qint(0), qint(1)],
                vec![qfrac(1, n), qfrac(1, n)],
            ]
            .into_iter()
            .collect();
            assert_eq!(amb, expected, "n = {}", n);
        }
        // n = 1: the cover is GL2 itself and the Hilbert basis is x, y.
        let w1 = WeightData::sym(1).unwrap();
        let (_, hb1) = w1.character_semigroup().unwrap();
        assert_eq!(hb1.len(), 2);
    }

    #[test]
    fn std_gl1_semigroup() {
        let w = WeightData::std_gl(1).unwrap();
        let (_, hb) = w.character_semigroup().unwrap();
        assert_eq!(hb, vec![vec![1]]);
        assert_eq!(w.find_nu().unwrap(), vec![1]);
        assert_eq!(w.orbit_generators().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn nu_absent_for_line() {
        let datum = crate::rootdata::build_root_datum(&GroupSpec::Torus(2)).unwrap();
        let w = WeightData::new(
            datum,
            &[vec![qint(1), qint(0)], vec![qint(-1), qint(0)]],
        )
        .unwrap();
        assert!(w.find_nu().is_none());
        assert!(!w.weight_cone().unwrap().strictly_convex);
        assert!(w.character_semigroup().is_err());
    }

    #[test]
    fn orbit_generators_sym_and_torus() {
        let w = WeightData::sym(3).unwrap();
        let gens = w.orbit_generators().unwrap();
        let amb: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| w.datum.char_lattice.to_ambient(g))
            .collect();
        assert_eq!(amb[0], vec![qfrac(1, 3), qfrac(1, 3)]); // nu first
        assert_eq!(amb[1], vec![qint(1), qint(0)]);
        assert_eq!(gens.len(), 2);

        // Torus with quadrant weights: generators are the Hilbert basis.
        let datum = crate::rootdata::build_root_datum(&GroupSpec::Torus(2)).unwrap();
        let wt = WeightData::new(
            datum,
            &[vec![qint(1), qint(0)], vec![qint(0), qint(1)]],
        )
        .unwrap();
        let gens = wt.orbit_generators().unwrap();
        assert_eq!(gens, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn toric_ideal_examples() {
        // Free semigroup: zero ideal.
        let free = toric_ideal(&[vec![1, 0], vec![0, 1]], 8).unwrap();
        assert!(free.binomials.is_empty());
        assert_eq!(free.to_display_string(), "0");

        // (2,0),(1,1),(0,2): XZ - Y^2.
        let veronese = toric_ideal(&[vec![2, 0], vec![1, 1], vec![0, 2]], 8).unwrap();
        assert_eq!(veronese.to_display_string(), "XZ-Y^2");
    }

    #[test]
    fn toric_ideal_binomials_vanish_on_parametrization() {
        let gens = vec![vec![1, 0], vec![-1, 3], vec![0, 1]];
        let ideal = toric_ideal(&gens, 12).unwrap();
        for (p, m) in &ideal.binomials {
            let image = |e: &Vec<i64>| -> Vec<i64> {
                (0..2)
                    .map(|i| (0..3).map(|j| e[j] * gens[j][i]).sum())
                    .collect()
            };
            assert_eq!(image(p), image(m));
        }
    }

    #[test]
    fn sym_presentation_strings() {
        for n in 1..=6 {
            let w = WeightData::sym(n).unwrap();
            match w.monoid_presentation().unwrap() {
                Presentation::SymFamily { toric, monoid_equation, .. } => {
                    let expected = if n == 1 {
                        "XY-Z".to_string()
                    } else {
                        format!("XY-Z^{}", n)
                    };
                    assert_eq!(toric.to_display_string(), expected, "n={}", n);
                    let expected_eq = if n == 1 {
                        "X1X4-X2X3=X5".to_string()
                    } else {
                        format!("X1X4-X2X3=X5^{}", n)
                    };
                    assert_eq!(monoid_equation, expected_eq);
                }
                other => panic!("expected sym family, got {:?}", other),
            }
        }
    }

    #[test]
    fn gl3_std_is_abstract() {
        let w = WeightData::std_gl(3).unwrap();
        match w.monoid_presentation().unwrap() {
            Presentation::Abstract { datum } => {
                assert_eq!(datum.colors.len(), 2);
                assert_eq!(datum.nu, Some(vec![1, 1, 1]));
            }
            other => panic!("expected abstract datum, got {:?}", other),
        }
    }

    #[test]
    fn levi_restriction_gl3() {
        let w = WeightData::std_gl(3).unwrap();
        let levi = w.datum.levi_subdatum(&[0]).unwrap();
        let r = w.levi_restriction(&levi).unwrap();
        assert!(r.same_toric_variety);
        // The W-orbit of e1 splits as {e1,e2} u {e3}.
        let split = r
            .decomposition
            .iter()
            .find(|s| s.generator == vec![1, 0, 0])
            .unwrap();
        let mut orbits = split.levi_orbits.clone();
        orbits.sort();
        assert_eq!(orbits, vec![vec![0, 0, 1], vec![1, 0, 0]]);
    }

    #[test]
    fn levi_restriction_composes() {
        // Restricting GL3 -> GL2xGL1 -> T matches restricting GL3 -> T.
        let w = WeightData::std_gl(3).unwrap();
        let levi = w.datum.levi_subdatum(&[0]).unwrap();
        let torus = w.datum.levi_subdatum(&[]).unwrap();
        let via_levi = w
            .levi_restriction(&levi)
            .unwrap()
            .restricted
            .levi_restriction(&torus)
            .unwrap();
        let direct = w.levi_restriction(&torus).unwrap();
        // On a torus every orbit is a singleton, so compare the unions.
        let collect = |r: &LeviRestriction| -> BTreeSet<Vec<i64>> {
            r.decomposition
                .iter()
                .flat_map(|s| s.levi_orbits.iter().cloned())
                .collect()
        };
        assert_eq!(collect(&via_levi), collect(&direct));
        // Restriction to G itself is the identity decomposition.
        let full = w.datum.levi_subdatum(&[0, 1]).unwrap();
        let r = w.levi_restriction(&full).unwrap();
        for split in &r.decomposition {
            assert_eq!(split.levi_orbits, vec![split.generator.clone()]);
        }
    }

    #[test]
    fn shifts_gl_n_std() {
        for n in 2..=5 {
            let w = WeightData::std_gl(n).unwrap();
            let s = w.compute_shifts(None).unwrap();
            assert_eq!(s.e_g, qint(n as i64 - 1));
        }
        // torus: zero shift
        let datum = crate::rootdata::build_root_datum(&GroupSpec::Torus(2)).unwrap();
        let wt =
            WeightData::new(datum, &[vec![qint(1), qint(0)], vec![qint(0), qint(1)]]).unwrap();
        let s = wt.compute_shifts(None).unwrap();
        assert_eq!(s.e_g, qint(0));
    }

    #[test]
    fn shifts_gl2_max_levi_matches_gj() {
        let w = WeightData::std_gl(2).unwrap();
        let levi = w.datum.levi_subdatum(&[]).unwrap();
        let s = w.compute_shifts(Some(&levi)).unwrap();
        let l = s.levi.unwrap();
        // nu_{G/L} = |t1| |t2| i.e. exponent vector (1,1) (n'=n''=1).
        assert_eq!(l.ratio_vector.unwrap(), vec![qint(1), qint(1)]);
        assert_eq!(l.delta_p_vector, vec![qint(1), qint(-1)]);
    }

    #[test]
    fn rook_monoid_counts() {
        let r1 = rook_monoid(1).unwrap();
        assert_eq!(r1.cardinality, 2);
        let r2 = rook_monoid(2).unwrap();
        assert_eq!(r2.cardinality, 7);
        assert_eq!(r2.unit_group_order, 2);
        assert_eq!(r2.idempotent_count, 4);
        let r3 = rook_monoid(3).unwrap();
        assert_eq!(r3.cardinality, 34);
        assert_eq!(r3.unit_group_order, 6);
        assert_eq!(r3.idempotent_count, 8);
        let r4 = rook_monoid(4).unwrap();
        assert_eq!(r4.cardinality, 209);
        assert!(rook_monoid(5).is_err());
    }

    #[test]
    fn sym2_charts_jacobian() {
        let w = WeightData::sym(2).unwrap();
        let cone = w.weight_cone().unwrap();
        let fan = cone.resolve_to_smooth_fan().unwrap();
        assert!(fan.is_smooth());
        let gens = w.sym_presentation_generators().unwrap();
        let charts = monomial_charts(&w, &fan, &gens).unwrap();
        assert_eq!(charts.len(), 2);
        for chart in &charts {
            // |Jac| = |z|^2 in generator coordinates.
            assert_eq!(chart.jacobian_generator_exponents, Some(vec![0, 0, 2]));
        }
    }

    #[test]
    fn smooth_chart_is_identity() {
        // std GL2: the weight cone is smooth, one chart, zero Jacobian.
        let w = WeightData::std_gl(2).unwrap();
        let cone = w.weight_cone().unwrap();
        let fan = cone.resolve_to_smooth_fan().unwrap();
        let (_, hb) = w.character_semigroup().unwrap();
        let charts = monomial_charts(&w, &fan, &hb).unwrap();
        assert_eq!(charts.len(), 1);
        assert_eq!(charts[0].jacobian_chart_exponents, vec![0, 0]);
        assert_eq!(charts[0].exponent_matrix, vec![vec![1, 0], vec![0, 1]]);
    }
}
