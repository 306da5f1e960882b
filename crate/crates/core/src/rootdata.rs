//! Split reductive group data: character and cocharacter lattices with a
//! perfect pairing, roots, coroots and Weyl generators.
//!
//! Built-in groups are `GL(n)`, split tori, and the fibered covers
//! `GL_2 x_{G_m} G_m` whose cocharacter lattice is `{(m,l) : m+l = 0 mod n}`.
//! Points carry integer coordinates in the respective lattice basis; the
//! pairing is the ambient dot product (the two bases are dual, so it is the
//! coordinate dot product as well).

use std::collections::BTreeSet;

use crate::lattice::LatticeBasis;
use crate::linalg::{self, qfrac, qint, Q};
use crate::{Error, Result};
use num_traits::Zero;

/// Descriptor for the built-in groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    GL(usize),
    Torus(usize),
    /// `GL_2 x_{G_m} G_m` along `x -> x^n`; the unit group of the Sym^n monoid.
    Gl2SymCover(i64),
}

impl GroupSpec {
    pub fn name(&self) -> String {
        match self {
            GroupSpec::GL(n) => format!("GL({})", n),
            GroupSpec::Torus(r) => format!("T({})", r),
            GroupSpec::Gl2SymCover(n) => format!("GL2xGm(n={})", n),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub name: String,
    pub char_lattice: LatticeBasis,
    pub cochar_lattice: LatticeBasis,
    /// Roots in char-lattice coordinates; `coroots[i]` pairs with `roots[i]`.
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Indices into `roots` of the chosen simple system.
    pub simple_roots: Vec<usize>,
    /// Weyl generators acting on cochar-lattice coordinates (one per simple root).
    pub weyl_gens_cochar: Vec<Vec<Vec<i64>>>,
    /// The contragredient action on char-lattice coordinates.
    pub weyl_gens_char: Vec<Vec<Vec<i64>>>,
}

/// Build a root datum from a group descriptor.
pub fn build_root_datum(spec: &GroupSpec) -> Result<RootDatum> {
    match spec {
        GroupSpec::GL(n) => {
            if *n == 0 {
                return Err(Error::InvalidParameter("GL(0)".into()));
            }
            Ok(gl_datum(*n))
        }
        GroupSpec::Torus(r) => {
            if *r == 0 {
                return Err(Error::InvalidParameter("torus of rank 0".into()));
            }
            Ok(RootDatum {
                name: spec.name(),
                char_lattice: LatticeBasis::standard(*r),
                cochar_lattice: LatticeBasis::standard(*r),
                roots: vec![],
                coroots: vec![],
                simple_roots: vec![],
                weyl_gens_cochar: vec![],
                weyl_gens_char: vec![],
            })
        }
        GroupSpec::Gl2SymCover(n) => {
            if *n <= 0 {
                return Err(Error::InvalidParameter("sym cover needs n >= 1".into()));
            }
            Ok(sym_cover_datum(*n))
        }
    }
}

fn gl_datum(n: usize) -> RootDatum {
    let lattice = LatticeBasis::standard(n);
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut simple = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut r = vec![0i64; n];
            r[i] = 1;
            r[j] = -1;
            if j == i + 1 {
                simple.push(roots.len());
            }
            roots.push(r.clone());
            coroots.push(r);
        }
    }
    // Transposition matrices s_i swapping coordinates i, i+1.
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut m = linalg::ident(n);
        m[i][i] = 0;
        m[i + 1][i + 1] = 0;
        m[i][i + 1] = 1;
        m[i + 1][i] = 1;
        gens.push(m);
    }
    RootDatum {
        name: format!("GL({})", n),
        char_lattice: lattice.clone(),
        cochar_lattice: lattice,
        roots,
        coroots,
        simple_roots: simple,
        weyl_gens_cochar: gens.clone(),
        weyl_gens_char: gens,
    }
}

fn sym_cover_datum(n: i64) -> RootDatum {
    // Cochar lattice {(m,l): m+l = 0 mod n}, basis (1,-1), (0,n).
    let cochar = LatticeBasis::new(vec![
        vec![qint(1), qint(-1)],
        vec![qint(0), qint(n)],
    ])
    .expect("basis invertible");
    // Char lattice {(a,b) in (1/n)Z^2 : a-b in Z}, basis (1,0), (1/n,1/n).
    let chars = LatticeBasis::new(vec![
        vec![qint(1), qint(0)],
        vec![qfrac(1, n), qfrac(1, n)],
    ])
    .expect("basis invertible");
    debug_assert!(chars.is_dual_to(&cochar));
    // Root (1,-1) ambient: char coords (2,-n); coroot (1,-1): cochar coords (1,0).
    let roots = vec![vec![2, -n], vec![-2, n]];
    let coroots = vec![vec![1, 0], vec![-1, 0]];
    // The coordinate swap of the ambient plane in the two coordinate systems.
    let gen_cochar = vec![vec![-1, n], vec![0, 1]];
    let gen_char = vec![vec![-1, 0], vec![n, 1]];
    RootDatum {
        name: format!("GL2xGm(n={})", n),
        char_lattice: chars,
        cochar_lattice: cochar,
        roots,
        coroots,
        simple_roots: vec![0],
        weyl_gens_cochar: vec![gen_cochar],
        weyl_gens_char: vec![gen_char],
    }
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.char_lattice.rank()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    /// Pairing of a character point and a cocharacter point (integer coords).
    pub fn pairing(&self, chi: &[i64], mu: &[i64]) -> Q {
        let a = self.char_lattice.to_ambient(chi);
        let b = self.cochar_lattice.to_ambient(mu);
        linalg::qdot(&a, &b)
    }

    /// Pairing with the character side given in ambient rational coordinates.
    pub fn pairing_ambient_char(&self, chi_ambient: &[Q], mu: &[i64]) -> Q {
        let b = self.cochar_lattice.to_ambient(mu);
        linalg::qdot(chi_ambient, &b)
    }

    /// Orbit of a cocharacter point under the Weyl group, by closure.
    pub fn weyl_orbit_cochar(&self, v: &[i64]) -> Vec<Vec<i64>> {
        orbit(v, &self.weyl_gens_cochar)
    }

    /// Orbit of a character point under the Weyl group.
    pub fn weyl_orbit_char(&self, v: &[i64]) -> Vec<Vec<i64>> {
        orbit(v, &self.weyl_gens_char)
    }

    /// All Weyl group elements as matrices on cochar coordinates.
    pub fn weyl_elements(&self) -> Vec<Vec<Vec<i64>>> {
        group_closure(&self.weyl_gens_cochar, self.rank())
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_elements().len()
    }

    /// Indices of positive roots: nonnegative combinations of the simple system.
    pub fn positive_roots(&self) -> Vec<usize> {
        let simple_amb: Vec<Vec<Q>> = self
            .simple_roots
            .iter()
            .map(|&i| self.char_lattice.to_ambient(&self.roots[i]))
            .collect();
        let rank = self.rank();
        let mut out = Vec::new();
        'root: for (idx, r) in self.roots.iter().enumerate() {
            let amb = self.char_lattice.to_ambient(r);
            // Solve amb = sum c_i simple_amb[i], c_i >= 0.
            let cols = simple_amb.len();
            if cols == 0 {
                continue;
            }
            let a: Vec<Vec<Q>> = (0..rank)
                .map(|row| (0..cols).map(|c| simple_amb[c][row].clone()).collect())
                .collect();
            match linalg::solve_rational(&a, &amb) {
                Ok((sol, kernel)) => {
                    if !kernel.is_empty() {
                        // Simple roots of our builtins are independent.
                        continue 'root;
                    }
                    if sol.iter().all(|c| c >= &Q::zero()) {
                        out.push(idx);
                    }
                }
                Err(_) => continue 'root,
            }
        }
        out
    }

    /// Half the sum of the positive roots, in ambient char coordinates.
    pub fn half_sum_positive(&self) -> Vec<Q> {
        let rank = self.rank();
        let mut acc = vec![Q::zero(); rank];
        for idx in self.positive_roots() {
            let amb = self.char_lattice.to_ambient(&self.roots[idx]);
            for i in 0..rank {
                acc[i] += &amb[i];
            }
        }
        for c in acc.iter_mut() {
            *c *= qfrac(1, 2);
        }
        acc
    }

    /// Is a character point dominant with respect to the simple coroots?
    pub fn is_dominant_char(&self, chi: &[i64]) -> bool {
        self.simple_roots.iter().all(|&i| {
            self.pairing(chi, &self.coroots[i]) >= Q::zero()
        })
    }

    /// Dominant representative of the Weyl orbit of a character point.
    pub fn dominant_representative(&self, chi: &[i64]) -> Vec<i64> {
        let orbit = self.weyl_orbit_char(chi);
        let mut doms: Vec<Vec<i64>> = orbit
            .into_iter()
            .filter(|p| self.is_dominant_char(p))
            .collect();
        doms.sort();
        doms.into_iter().next().expect("every orbit meets the dominant chamber")
    }

    /// Sub-datum generated by a subset of the simple roots (same lattices).
    pub fn levi_subdatum(&self, subset: &[usize]) -> Result<LeviDatum> {
        for &s in subset {
            if s >= self.simple_roots.len() {
                return Err(Error::InvalidParameter(format!(
                    "simple root index {} out of range",
                    s
                )));
            }
        }
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let simple_amb: Vec<Vec<Q>> = subset
            .iter()
            .map(|&s| self.char_lattice.to_ambient(&self.roots[self.simple_roots[s]]))
            .collect();
        let rank = self.rank();
        // Levi roots: roots lying in the rational span of the chosen simples.
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut simple_indices = Vec::new();
        for (idx, r) in self.roots.iter().enumerate() {
            let amb = self.char_lattice.to_ambient(r);
            if in_span(&simple_amb, &amb, rank) {
                if subset
                    .iter()
                    .any(|&s| self.simple_roots[s] == idx)
                {
                    simple_indices.push(roots.len());
                }
                roots.push(r.clone());
                coroots.push(self.coroots[idx].clone());
            }
        }
        let gens_cochar: Vec<_> = subset
            .iter()
            .map(|&s| self.weyl_gens_cochar[s].clone())
            .collect();
        let gens_char: Vec<_> = subset
            .iter()
            .map(|&s| self.weyl_gens_char[s].clone())
            .collect();
        let datum = RootDatum {
            name: format!("{}|Levi{:?}", self.name, subset),
            char_lattice: self.char_lattice.clone(),
            cochar_lattice: self.cochar_lattice.clone(),
            roots,
            coroots,
            simple_roots: simple_indices,
            weyl_gens_cochar: gens_cochar,
            weyl_gens_char: gens_char,
        };
        Ok(LeviDatum { simple_subset: subset, datum })
    }
}

/// A Levi sub-datum: same lattices, restricted root system.
#[derive(Debug, Clone)]
pub struct LeviDatum {
    pub simple_subset: Vec<usize>,
    pub datum: RootDatum,
}

fn in_span(span: &[Vec<Q>], v: &[Q], rank: usize) -> bool {
    if span.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    let a: Vec<Vec<Q>> = (0..rank)
        .map(|row| span.iter().map(|s| s[row].clone()).collect())
        .collect();
    linalg::solve_rational(&a, v).is_ok()
}

fn orbit(v: &[i64], gens: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack = vec![v.to_vec()];
    seen.insert(v.to_vec());
    while let Some(p) = stack.pop() {
        for g in gens {
            let img = linalg::mat_vec(g, &p);
            if seen.insert(img.clone()) {
                stack.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

fn group_closure(gens: &[Vec<Vec<i64>>], rank: usize) -> Vec<Vec<Vec<i64>>> {
    let id = linalg::ident(rank);
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(m) = stack.pop() {
        for g in gens {
            let prod = linalg::mat_mul(g, &m);
            if seen.insert(prod.clone()) {
                stack.push(prod);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_standard_datum() {
        let d = build_root_datum(&GroupSpec::GL(2)).unwrap();
        assert_eq!(d.roots.len(), 2);
        assert!(d.roots.contains(&vec![1, -1]));
        // <alpha, alpha_check> = 2
        for (r, c) in d.roots.iter().zip(&d.coroots) {
            assert_eq!(d.pairing(r, c), qint(2));
        }
        // orbit of (1,0) is {(1,0),(0,1)}
        let mut orb = d.weyl_orbit_cochar(&[1, 0]);
        orb.sort();
        assert_eq!(orb, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn sym_cover_char_lattice_duality() {
        for n in 1..=6 {
            let d = build_root_datum(&GroupSpec::Gl2SymCover(n)).unwrap();
            assert!(d.char_lattice.is_dual_to(&d.cochar_lattice));
            for (r, c) in d.roots.iter().zip(&d.coroots) {
                assert_eq!(d.pairing(r, c), qint(2));
            }
            // nu = (1/n, 1/n) ambient = char coords (0,1) is Weyl-fixed.
            let orb = d.weyl_orbit_char(&[0, 1]);
            assert_eq!(orb, vec![vec![0, 1]]);
            // its pairing with each weight (n-k, k) is 1
            for k in 0..=n {
                let w = d
                    .cochar_lattice
                    .from_ambient(&[qint(n - k), qint(k)])
                    .unwrap();
                assert_eq!(d.pairing(&[0, 1], &w), qint(1));
            }
        }
    }

    #[test]
    fn torus_has_trivial_weyl_group() {
        let d = build_root_datum(&GroupSpec::Torus(3)).unwrap();
        assert!(d.is_torus());
        assert_eq!(d.weyl_order(), 1);
        assert_eq!(d.weyl_orbit_cochar(&[1, 2, 3]), vec![vec![1, 2, 3]]);
        assert_eq!(d.half_sum_positive(), vec![Q::zero(); 3]);
        // plain dot pairing on a torus
        assert_eq!(d.pairing(&[1, 1, 0], &[2, 3, 7]), qint(5));
    }

    #[test]
    fn gl3_orbit_and_half_sum() {
        let d = build_root_datum(&GroupSpec::GL(3)).unwrap();
        let orb = d.weyl_orbit_cochar(&[1, 0, 0]);
        assert_eq!(orb.len(), 3);
        assert_eq!(
            d.half_sum_positive(),
            vec![qint(1), qint(0), qint(-1)]
        );
        assert_eq!(d.weyl_order(), 6);
    }

    #[test]
    fn gl2_half_sum() {
        let d = build_root_datum(&GroupSpec::GL(2)).unwrap();
        assert_eq!(d.half_sum_positive(), vec![qfrac(1, 2), qfrac(-1, 2)]);
    }

    #[test]
    fn levi_subdata() {
        let d = build_root_datum(&GroupSpec::GL(3)).unwrap();
        // S = {alpha_1}: Levi GL2 x GL1, root system of order 2.
        let l = d.levi_subdatum(&[0]).unwrap();
        assert_eq!(l.datum.roots.len(), 2);
        assert_eq!(l.datum.weyl_order(), 2);
        // Empty subset: the torus.
        let t = d.levi_subdatum(&[]).unwrap();
        assert!(t.datum.is_torus());

        let d4 = build_root_datum(&GroupSpec::GL(4)).unwrap();
        let l4 = d4.levi_subdatum(&[0, 2]).unwrap();
        assert_eq!(l4.datum.weyl_order(), 4);
    }

    #[test]
    fn weyl_generators_preserve_pairing() {
        for spec in [
            GroupSpec::GL(3),
            GroupSpec::GL(4),
            GroupSpec::Gl2SymCover(3),
        ] {
            let d = build_root_datum(&spec).unwrap();
            let test_chars: Vec<Vec<i64>> = vec![
                vec![1; d.rank()],
                (0..d.rank() as i64).collect(),
            ];
            let test_cochars = test_chars.clone();
            for (gc, gch) in d.weyl_gens_cochar.iter().zip(&d.weyl_gens_char) {
                for chi in &test_chars {
                    for mu in &test_cochars {
                        let lhs = d.pairing(&linalg::mat_vec(gch, chi), &linalg::mat_vec(gc, mu));
                        assert_eq!(lhs, d.pairing(chi, mu));
                    }
                }
                // involution
                assert_eq!(linalg::mat_mul(gc, gc), linalg::ident(d.rank()));
            }
        }
    }
}
