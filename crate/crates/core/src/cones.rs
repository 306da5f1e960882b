//! Exact rational polyhedral cone algebra.
//!
//! Cones live in a [`LatticeBasis`] and are stored by primitive extremal ray
//! coordinates together with facet normals (in the dual coordinates, so all
//! pairings are plain dot products). Everything here is exact integer or
//! rational arithmetic; dimensions stay small, so facet enumeration is done
//! by rank-(d-1) subset search and Hilbert bases by bounded enumeration with
//! an irreducibility filter.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::lattice::LatticeBasis;
use crate::linalg::{self, Q};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct RationalCone {
    pub lattice: LatticeBasis,
    /// Primitive extremal generators, lattice coordinates, sorted.
    pub rays: Vec<Vec<i64>>,
    /// Primitive facet normals (dot-pairing), oriented inward.
    pub facets: Vec<Vec<i64>>,
    /// Equations cutting out the linear span of the cone.
    pub span_equations: Vec<Vec<i64>>,
    pub strictly_convex: bool,
}

/// Facet normals and span equations of `cone(gens)` inside `Z^d`.
///
/// Facets are the supporting normals of codimension-1 faces within the span;
/// equations cut out the span itself.
fn facets_and_equations(gens: &[Vec<i64>], dim: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    // span(G)^perp: kernel of the matrix with the generators as rows.
    let equations = linalg::kernel_basis(gens);
    let span_dim = dim - equations.len();
    let mut facets: BTreeSet<Vec<i64>> = BTreeSet::new();
    if span_dim == 0 {
        return (Vec::new(), equations);
    }
    let idx: Vec<usize> = (0..gens.len()).collect();
    for subset in subsets_of_size(&idx, span_dim.saturating_sub(1)) {
        let mut rows: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
        rows.extend(equations.iter().cloned());
        let kernel = linalg::kernel_basis_with_dim(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let n = linalg::primitive(&kernel[0]);
        for cand in [n.clone(), n.iter().map(|x| -x).collect::<Vec<_>>()] {
            let mut nonneg = true;
            let mut strict = false;
            for g in gens {
                let p = linalg::dot(&cand, g);
                if p < 0 {
                    nonneg = false;
                    break;
                }
                if p > 0 {
                    strict = true;
                }
            }
            if nonneg && strict {
                facets.insert(cand);
            }
        }
    }
    (facets.into_iter().collect(), equations)
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == k {
            out.push(cur);
            continue;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            let mut next = cur.clone();
            next.push(items[i]);
            stack.push((i + 1, next));
        }
    }
    out
}

impl RationalCone {
    /// Canonical form of the cone generated by rational points.
    pub fn from_generators(lattice: LatticeBasis, generators: &[Vec<Q>]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let dim = lattice.rank();
        let mut prim: BTreeSet<Vec<i64>> = BTreeSet::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::InvalidParameter("generator dimension mismatch".into()));
            }
            if g.iter().all(Zero::is_zero) {
                return Err(Error::InvalidParameter("zero generator".into()));
            }
            // Scale to a primitive lattice point: clear denominators of the
            // lattice coordinates, then divide by the gcd.
            let coords = lattice.coords_of(g);
            let mut denom_lcm: i64 = 1;
            for c in &coords {
                let d = i64::try_from(c.denom()).map_err(|_| Error::InvalidParameter("coordinate overflow".into()))?;
                denom_lcm = num_integer::lcm(denom_lcm, d);
            }
            let ints: Vec<i64> = coords
                .iter()
                .map(|c| {
                    let scaled = c * linalg::qint(denom_lcm);
                    i64::try_from(&scaled.to_integer()).expect("desk-scale coordinates")
                })
                .collect();
            prim.insert(linalg::primitive(&ints));
        }
        let gens: Vec<Vec<i64>> = prim.into_iter().collect();
        Ok(Self::from_primitive_generators(lattice, gens))
    }

    /// Canonical form from integer lattice-coordinate generators.
    pub fn from_int_generators(lattice: LatticeBasis, generators: &[Vec<i64>]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if generators.iter().any(|g| g.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidParameter("zero generator".into()));
        }
        let mut prim: BTreeSet<Vec<i64>> = BTreeSet::new();
        for g in generators {
            prim.insert(linalg::primitive(g));
        }
        Ok(Self::from_primitive_generators(lattice, prim.into_iter().collect()))
    }

    fn from_primitive_generators(lattice: LatticeBasis, gens: Vec<Vec<i64>>) -> Self {
        let dim = lattice.rank();
        let (facets, equations) = facets_and_equations(&gens, dim);
        let span_dim = dim - equations.len();
        // Pointed iff the facet normals (plus span equations) span R^d.
        let mut all_rows = facets.clone();
        all_rows.extend(equations.iter().cloned());
        let strictly_convex = if all_rows.is_empty() {
            span_dim == 0
        } else {
            linalg::rank(&all_rows) == dim
        };
        let rays = if strictly_convex {
            let mut rays: Vec<Vec<i64>> = gens
                .into_iter()
                .filter(|g| {
                    let mut active: Vec<Vec<i64>> = facets
                        .iter()
                        .filter(|f| linalg::dot(f, g) == 0)
                        .cloned()
                        .collect();
                    active.extend(equations.iter().cloned());
                    if active.is_empty() {
                        dim == 1
                    } else {
                        linalg::rank(&active) == dim - 1
                    }
                })
                .collect();
            rays.sort();
            rays
        } else {
            let mut rays = gens;
            rays.sort();
            rays
        };
        RationalCone {
            lattice,
            rays,
            facets,
            span_equations: equations,
            strictly_convex,
        }
    }

    pub fn dim(&self) -> usize {
        if self.rays.is_empty() {
            0
        } else {
            linalg::rank(&self.rays)
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.lattice.rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Membership of a lattice point.
    pub fn contains(&self, p: &[i64]) -> bool {
        self.span_equations.iter().all(|e| linalg::dot(e, p) == 0)
            && self.facets.iter().all(|f| linalg::dot(f, p) >= 0)
    }

    /// Membership of a rational point (lattice coordinates).
    pub fn contains_rational(&self, p: &[Q]) -> bool {
        let eq_ok = self.span_equations.iter().all(|e| {
            linalg::qdot(&linalg::to_q_vec(e), p).is_zero()
        });
        eq_ok
            && self.facets.iter().all(|f| {
                linalg::qdot(&linalg::to_q_vec(f), p) >= Q::zero()
            })
    }

    /// Rays in ambient coordinates.
    pub fn ambient_rays(&self) -> Vec<Vec<Q>> {
        self.rays.iter().map(|r| self.lattice.to_ambient(r)).collect()
    }

    /// The dual cone inside the dual lattice. Requires this cone to be
    /// strictly convex and full-dimensional and the two bases dual.
    pub fn dual(&self, dual_lattice: &LatticeBasis) -> Result<RationalCone> {
        if !dual_lattice.is_dual_to(&self.lattice) {
            return Err(Error::LatticeMismatch(
                "dual lattice basis is not dual to the cone's lattice".into(),
            ));
        }
        if !self.strictly_convex || !self.is_full_dimensional() {
            return Err(Error::NotStrictlyConvex);
        }
        RationalCone::from_int_generators(dual_lattice.clone(), &self.facets)
    }

    /// Lattice index of the subgroup spanned by the rays of a simplicial cone
    /// inside the saturation of its span. 1 exactly for smooth cones.
    pub fn multiplicity(&self) -> Result<i64> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        let divisors = linalg::elementary_divisors(&self.rays);
        Ok(divisors.iter().product())
    }

    /// Do the rays extend to a basis of the lattice?
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        if !self.is_simplicial() {
            return false;
        }
        linalg::elementary_divisors(&self.rays).iter().all(|&d| d == 1)
    }

    /// Rational coordinates of `p` in the ray basis of a simplicial cone.
    pub fn simplex_coordinates(&self, p: &[i64]) -> Option<Vec<Q>> {
        if !self.is_simplicial() {
            return None;
        }
        let d = self.lattice.rank();
        let k = self.rays.len();
        let a: Vec<Vec<Q>> = (0..d)
            .map(|row| (0..k).map(|c| linalg::qint(self.rays[c][row])).collect())
            .collect();
        let b = linalg::to_q_vec(p);
        match linalg::solve_rational(&a, &b) {
            Ok((sol, _)) => Some(sol),
            Err(_) => None,
        }
    }

    /// Minimal generating set of the semigroup of lattice points of a
    /// strictly convex cone.
    pub fn hilbert_basis(&self) -> Result<Vec<Vec<i64>>> {
        if !self.strictly_convex {
            return Err(Error::NotStrictlyConvex);
        }
        if self.rays.is_empty() {
            return Ok(Vec::new());
        }
        let simplices = self.triangulate()?;
        let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
        for simplex in &simplices {
            for p in zonotope_lattice_points(&simplex.rays) {
                if !p.iter().all(|&x| x == 0) {
                    candidates.insert(p);
                }
            }
        }
        let cand_vec: Vec<Vec<i64>> = candidates.iter().cloned().collect();
        let mut basis = Vec::new();
        'cand: for x in &cand_vec {
            for y in &cand_vec {
                if y == x {
                    continue;
                }
                let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                if diff.iter().all(|&v| v == 0) {
                    continue;
                }
                if self.contains(&diff) {
                    continue 'cand; // x = y + diff is reducible
                }
            }
            basis.push(x.clone());
        }
        Ok(basis)
    }

    /// Triangulation into simplicial subcones using only the existing rays
    /// (pulling from the lexicographically least ray, recursively on facets).
    pub fn triangulate(&self) -> Result<Vec<RationalCone>> {
        if !self.strictly_convex {
            return Err(Error::NotStrictlyConvex);
        }
        let index_sets = triangulate_indices(&self.rays, self.lattice.rank())?;
        Ok(index_sets
            .into_iter()
            .map(|set| {
                let rays: Vec<Vec<i64>> = set.iter().map(|&i| self.rays[i].clone()).collect();
                RationalCone::from_int_generators(self.lattice.clone(), &rays)
                    .expect("subcone of a valid cone")
            })
            .collect())
    }

    /// Resolve to a fan of smooth cones by repeated stellar subdivision at
    /// Hilbert-basis points of the most singular cone.
    pub fn resolve_to_smooth_fan(&self) -> Result<Fan> {
        if !self.strictly_convex {
            return Err(Error::NotStrictlyConvex);
        }
        let mut max_cones = self.triangulate()?;
        let mut steps: Vec<SubdivisionStep> = Vec::new();
        loop {
            let mults: Vec<i64> = max_cones
                .iter()
                .map(|c| c.multiplicity().expect("triangulated cones are simplicial"))
                .collect();
            // Most singular cone; ties broken by the sorted ray list.
            let worst = (0..max_cones.len())
                .filter(|&i| mults[i] > 1)
                .min_by(|&a, &b| {
                    mults[b]
                        .cmp(&mults[a])
                        .then_with(|| max_cones[a].rays.cmp(&max_cones[b].rays))
                });
            let Some(wi) = worst else { break };
            let sigma = max_cones[wi].clone();
            let hb = sigma.hilbert_basis()?;
            let ray_set: BTreeSet<Vec<i64>> = sigma.rays.iter().cloned().collect();
            let mut pivots: Vec<Vec<i64>> = hb
                .into_iter()
                .filter(|h| !ray_set.contains(h))
                .collect();
            pivots.sort();
            if pivots.is_empty() {
                return Err(Error::Unsupported(
                    "singular simplicial cone without interior Hilbert point".into(),
                ));
            }
            // Pivot minimizing the residual singularity of the split of the
            // worst cone, ties lexicographic.
            let score = |x: &Vec<i64>| -> i64 {
                let t = sigma.simplex_coordinates(x).expect("pivot lies in the cone span");
                let m = linalg::qint(mults[wi]);
                let mut excess = 0i64;
                for ti in &t {
                    if ti.is_zero() {
                        continue;
                    }
                    let piece = ti * &m;
                    debug_assert!(piece.is_integer());
                    excess += i64::try_from(&piece.to_integer()).unwrap() - 1;
                }
                excess
            };
            let pivot = pivots
                .iter()
                .min_by(|a, b| score(a).cmp(&score(b)).then_with(|| a.cmp(b)))
                .unwrap()
                .clone();

            let before: Vec<i64> = mults.clone();
            let mut next: Vec<RationalCone> = Vec::new();
            for cone in &max_cones {
                match cone.simplex_coordinates(&pivot) {
                    Some(t)
                        if cone.contains(&pivot)
                            && t.iter().any(|c| c > &Q::zero()) =>
                    {
                        for (i, ti) in t.iter().enumerate() {
                            if ti > &Q::zero() {
                                let mut rays = cone.rays.clone();
                                rays[i] = pivot.clone();
                                next.push(
                                    RationalCone::from_int_generators(
                                        self.lattice.clone(),
                                        &rays,
                                    )
                                    .expect("stellar piece"),
                                );
                            }
                        }
                    }
                    _ => next.push(cone.clone()),
                }
            }
            max_cones = next;
            let after: Vec<i64> = max_cones
                .iter()
                .map(|c| c.multiplicity().expect("simplicial"))
                .collect();
            let excess = |v: &[i64]| v.iter().map(|m| m - 1).sum::<i64>();
            steps.push(SubdivisionStep {
                pivot,
                multiplicities_before: before.clone(),
                multiplicities_after: after.clone(),
                total_excess_before: excess(&before),
                total_excess_after: excess(&after),
            });
            // Termination certificate: the multiset of multiplicities drops.
            debug_assert!(multiset_decreases(&before, &after));
        }
        Ok(Fan {
            lattice: self.lattice.clone(),
            max_cones,
            steps,
        })
    }
}

/// One stellar subdivision in a resolution, with its termination certificate.
#[derive(Debug, Clone)]
pub struct SubdivisionStep {
    pub pivot: Vec<i64>,
    pub multiplicities_before: Vec<i64>,
    pub multiplicities_after: Vec<i64>,
    pub total_excess_before: i64,
    pub total_excess_after: i64,
}

/// A fan given by its maximal cones (faces are implicit in the ray data).
#[derive(Debug, Clone)]
pub struct Fan {
    pub lattice: LatticeBasis,
    pub max_cones: Vec<RationalCone>,
    pub steps: Vec<SubdivisionStep>,
}

impl Fan {
    pub fn rays(&self) -> Vec<Vec<i64>> {
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        for c in &self.max_cones {
            for r in &c.rays {
                set.insert(r.clone());
            }
        }
        set.into_iter().collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(RationalCone::is_smooth)
    }

    /// Pairwise intersections of maximal cones are common faces.
    pub fn intersections_are_faces(&self) -> bool {
        for (i, a) in self.max_cones.iter().enumerate() {
            for b in self.max_cones.iter().skip(i + 1) {
                let mut normals = a.facets.clone();
                normals.extend(a.span_equations.iter().cloned());
                normals.extend(a.span_equations.iter().map(|e| e.iter().map(|x| -x).collect()));
                normals.extend(b.facets.iter().cloned());
                normals.extend(b.span_equations.iter().cloned());
                normals.extend(b.span_equations.iter().map(|e| e.iter().map(|x| -x).collect()));
                let inter = extreme_rays_of_halfspace_cone(&normals, self.lattice.rank());
                let shared: BTreeSet<Vec<i64>> = a
                    .rays
                    .iter()
                    .filter(|r| b.rays.contains(r))
                    .cloned()
                    .collect();
                let got: BTreeSet<Vec<i64>> = inter.into_iter().collect();
                if got != shared {
                    return false;
                }
            }
        }
        true
    }
}

/// Extreme rays of `{x : <n, x> >= 0 for all n}` for a pointed intersection.
pub fn extreme_rays_of_halfspace_cone(normals: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    let idx: Vec<usize> = (0..normals.len()).collect();
    if dim == 0 {
        return Vec::new();
    }
    for subset in subsets_of_size(&idx, dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let kernel = linalg::kernel_basis_with_dim(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let v = linalg::primitive(&kernel[0]);
        for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vec<_>>()] {
            if normals.iter().all(|n| linalg::dot(n, &cand) >= 0) {
                // Extremality: active constraints must have rank dim-1.
                let active: Vec<Vec<i64>> = normals
                    .iter()
                    .filter(|n| linalg::dot(n, &cand) == 0)
                    .cloned()
                    .collect();
                if (dim == 1 && active.is_empty()) || linalg::rank(&active) == dim - 1 {
                    rays.insert(cand);
                }
            }
        }
    }
    rays.into_iter().collect()
}

fn triangulate_indices(rays: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<usize>>> {
    let k = linalg::rank(rays);
    if rays.len() == k {
        return Ok(vec![(0..rays.len()).collect()]);
    }
    // Pull from the lexicographically least ray.
    let v = 0usize; // rays are sorted by construction where this is called
    let (facets, _) = facets_and_equations(rays, dim);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for f in &facets {
        if linalg::dot(f, &rays[v]) == 0 {
            continue; // facet contains the apex
        }
        let facet_members: Vec<usize> = (0..rays.len())
            .filter(|&i| linalg::dot(f, &rays[i]) == 0)
            .collect();
        let facet_rays: Vec<Vec<i64>> = facet_members.iter().map(|&i| rays[i].clone()).collect();
        for sub in triangulate_indices(&facet_rays, dim)? {
            let mut simplex: Vec<usize> = sub.into_iter().map(|j| facet_members[j]).collect();
            simplex.push(v);
            simplex.sort_unstable();
            simplex.dedup();
            // Keep only full simplices of dimension k.
            let mat: Vec<Vec<i64>> = simplex.iter().map(|&i| rays[i].clone()).collect();
            if linalg::rank(&mat) == simplex.len() && simplex.len() == k {
                out.push(simplex);
            }
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Unsupported("triangulation failed".into()));
    }
    Ok(out)
}

/// Lattice points of the closed zonotope spanned by independent rays.
fn zonotope_lattice_points(rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = rays[0].len();
    let k = rays.len();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for i in 0..d {
        for r in rays {
            if r[i] < 0 {
                lo[i] += r[i];
            } else {
                hi[i] += r[i];
            }
        }
    }
    // Precompute a solving operator: pick k independent rows.
    let a: Vec<Vec<Q>> = (0..d)
        .map(|row| (0..k).map(|c| linalg::qint(rays[c][row])).collect())
        .collect();
    let mut out = Vec::new();
    let mut point = lo.clone();
    'iter: loop {
        let b = linalg::to_q_vec(&point);
        if let Ok((t, kernel)) = linalg::solve_rational(&a, &b) {
            if kernel.is_empty()
                && t.iter().all(|c| c >= &Q::zero() && c <= &linalg::qint(1))
            {
                out.push(point.clone());
            }
        }
        // advance odometer
        for i in 0..d {
            point[i] += 1;
            if point[i] <= hi[i] {
                continue 'iter;
            }
            point[i] = lo[i];
        }
        break;
    }
    out
}

fn multiset_decreases(before: &[i64], after: &[i64]) -> bool {
    let mut b = before.to_vec();
    let mut a = after.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    a.sort_unstable_by(|x, y| y.cmp(x));
    // Dershowitz–Manna: after < before in the multiset order. A simple
    // sufficient check: the sorted sequences differ and the first difference
    // favors `after`, comparing as descending words.
    if a == b {
        return false;
    }
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    a.len() < b.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qint;

    fn std2() -> LatticeBasis {
        LatticeBasis::standard(2)
    }

    fn cone2(rays: &[[i64; 2]]) -> RationalCone {
        let gens: Vec<Vec<i64>> = rays.iter().map(|r| r.to_vec()).collect();
        RationalCone::from_int_generators(std2(), &gens).unwrap()
    }

    #[test]
    fn normalization_drops_interior_generators() {
        let c = RationalCone::from_generators(
            std2(),
            &[
                vec![qint(2), qint(0)],
                vec![qint(0), qint(3)],
                vec![qint(1), qint(1)],
            ],
        )
        .unwrap();
        assert_eq!(c.rays, vec![vec![0, 1], vec![1, 0]]);
        assert!(c.strictly_convex);
    }

    #[test]
    fn sym_weights_normalize_to_primitive_quadrant() {
        // {(n-k, k)}: extremal rays (n,0),(0,n), primitivized.
        let n = 4i64;
        let gens: Vec<Vec<Q>> = (0..=n).map(|k| vec![qint(n - k), qint(k)]).collect();
        let c = RationalCone::from_generators(std2(), &gens).unwrap();
        assert_eq!(c.rays, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn line_is_not_strictly_convex() {
        let c = cone2(&[[1, 0], [-1, 0]]);
        assert!(!c.strictly_convex);
        assert!(c.hilbert_basis().is_err());
    }

    #[test]
    fn dual_of_quadrant_is_quadrant() {
        let c = cone2(&[[1, 0], [0, 1]]);
        let d = c.dual(&std2()).unwrap();
        assert_eq!(d.rays, vec![vec![0, 1], vec![1, 0]]);
        let dd = d.dual(&std2()).unwrap();
        assert_eq!(dd.rays, c.rays);
    }

    #[test]
    fn dual_of_tilted_cone() {
        let c = cone2(&[[1, 1], [1, -1]]);
        let d = c.dual(&std2()).unwrap();
        assert_eq!(d.rays, vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn hilbert_basis_examples() {
        let quad = cone2(&[[1, 0], [0, 1]]);
        assert_eq!(quad.hilbert_basis().unwrap(), vec![vec![0, 1], vec![1, 0]]);

        let c2 = cone2(&[[1, 0], [1, 2]]);
        let mut hb = c2.hilbert_basis().unwrap();
        hb.sort();
        assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);

        let c3 = cone2(&[[1, 0], [1, 3]]);
        let mut hb3 = c3.hilbert_basis().unwrap();
        hb3.sort();
        assert_eq!(
            hb3,
            vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]
        );
    }

    #[test]
    fn multiplicity_and_smoothness() {
        assert_eq!(cone2(&[[1, 0], [0, 1]]).multiplicity().unwrap(), 1);
        assert!(cone2(&[[1, 0], [0, 1]]).is_smooth());
        for n in 2..=6 {
            let c = cone2(&[[1, 0], [1, n]]);
            assert_eq!(c.multiplicity().unwrap(), n);
            assert!(!c.is_smooth());
        }
    }

    #[test]
    fn resolve_hirzebruch_jung_family() {
        for n in 2..=6i64 {
            let c = cone2(&[[1, 0], [1, n]]);
            let fan = c.resolve_to_smooth_fan().unwrap();
            assert!(fan.is_smooth());
            let mut rays = fan.rays();
            rays.sort();
            let expected: Vec<Vec<i64>> = (0..=n).map(|k| vec![1, k]).collect();
            assert_eq!(rays, expected);
            assert_eq!(fan.max_cones.len(), n as usize);
            assert!(fan.intersections_are_faces());
        }
    }

    #[test]
    fn resolve_smooth_input_is_identity() {
        let c = cone2(&[[1, 0], [0, 1]]);
        let fan = c.resolve_to_smooth_fan().unwrap();
        assert_eq!(fan.max_cones.len(), 1);
        assert!(fan.steps.is_empty());
        assert_eq!(fan.max_cones[0].rays, c.rays);
    }

    #[test]
    fn triangulate_square_cone_3d() {
        // Cone over a square: 4 rays in 3d, two simplices after pulling.
        let gens = vec![
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![-1, 0, 1],
            vec![0, -1, 1],
        ];
        let c = RationalCone::from_int_generators(LatticeBasis::standard(3), &gens).unwrap();
        assert_eq!(c.rays.len(), 4);
        let tri = c.triangulate().unwrap();
        assert_eq!(tri.len(), 2);
        // The diamond over (+-1,0),(0,+-1) has normalized volume 4.
        let total: i64 = tri.iter().map(|s| s.multiplicity().unwrap()).sum();
        assert_eq!(total, 4);
        let fan = c.resolve_to_smooth_fan().unwrap();
        assert!(fan.is_smooth());
        assert!(fan.intersections_are_faces());
    }
}
