//! Brute-force cohomology dimensions.
//!
//! Elements are bitmasks and every structure map is re-derived from the raw
//! tables. Cochains are parametrised on basis tuples, extended to all
//! elements by multilinearity and the sum rule, and every constraint and
//! differential is evaluated pointwise on *all* elements. Dimensions come
//! from counting: `|C|`, `|Z|` by Gray-code enumeration of the whole
//! parameter space, `|B|` by collecting distinct images.

use std::collections::HashSet;

use rpoisson_core::{
    AlgebraPresentation, GF2Matrix, GF2Vector, LieRinehartPresentation, ModulePresentation, Theory,
};

fn mask(v: &GF2Vector) -> u32 {
    v.iter_ones().fold(0, |m, i| m | 1 << i)
}

fn table(t: &[Vec<GF2Vector>]) -> Vec<Vec<u32>> {
    t.iter().map(|r| r.iter().map(mask).collect()).collect()
}

/// Columns of each matrix as masks.
fn columns(ms: &[GF2Matrix]) -> Vec<Vec<u32>> {
    ms.iter()
        .map(|m| (0..m.cols()).map(|c| mask(&m.column(c))).collect())
        .collect()
}

fn bilinear(t: &[Vec<u32>], x: u32, y: u32) -> u32 {
    let mut out = 0;
    for (i, row) in t.iter().enumerate() {
        if x >> i & 1 == 1 {
            for (j, &v) in row.iter().enumerate() {
                if y >> j & 1 == 1 {
                    out ^= v;
                }
            }
        }
    }
    out
}

fn bits(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| x >> i & 1 == 1)
}

/// Everything the complexes need, as element-level operations.
pub struct Setting {
    theory: Theory,
    dim_l: usize,
    dim_m: usize,
    dim_a: usize,
    bracket: Vec<Vec<u32>>,
    two_map: Vec<u32>,
    rho: Vec<Vec<u32>>,
    /// `A`-structure: product on `A`, action on `L`, action on `M`.
    a_product: Vec<Vec<u32>>,
    a_on_l: Vec<Vec<u32>>,
    a_on_m: Vec<Vec<u32>>,
}

impl Setting {
    pub fn for_algebra(p: &AlgebraPresentation, theory: Theory) -> Self {
        let mut p = p.clone();
        p.ensure_two_map();
        let bracket = table(&p.bracket);
        let dim = p.dim;
        let rho = (0..dim)
            .map(|j| (0..dim).map(|c| bracket[j][c]).collect())
            .collect();
        let product = p.product.as_ref().map(|t| table(t)).unwrap_or_default();
        Self {
            theory,
            dim_l: dim,
            dim_m: dim,
            dim_a: if theory == Theory::PA { dim } else { 0 },
            bracket,
            two_map: p.two_map.as_ref().unwrap().iter().map(mask).collect(),
            rho,
            a_product: product.clone(),
            a_on_l: product.clone(),
            a_on_m: product,
        }
    }

    pub fn for_lie_rinehart(lr: &LieRinehartPresentation, m: &ModulePresentation) -> Self {
        let mut lie = lr.lie.clone();
        lie.ensure_two_map();
        Self {
            theory: Theory::LR,
            dim_l: lie.dim,
            dim_m: m.dim,
            dim_a: lr.base.dim,
            bracket: table(&lie.bracket),
            two_map: lie.two_map.as_ref().unwrap().iter().map(mask).collect(),
            rho: columns(&m.rho),
            a_product: table(lr.base.product.as_ref().unwrap()),
            a_on_l: table(&lr.action),
            a_on_m: columns(m.a_action.as_ref().unwrap()),
        }
    }

    fn br(&self, x: u32, y: u32) -> u32 {
        bilinear(&self.bracket, x, y)
    }

    fn sq(&self, x: u32) -> u32 {
        let mut out = 0;
        let xs: Vec<usize> = bits(x).collect();
        for (k, &i) in xs.iter().enumerate() {
            out ^= self.two_map[i];
            for &j in &xs[k + 1..] {
                out ^= self.bracket[i][j];
            }
        }
        out
    }

    fn rho(&self, x: u32, m: u32) -> u32 {
        bilinear(&self.rho, x, m)
    }

    fn a_mul(&self, a: u32, b: u32) -> u32 {
        bilinear(&self.a_product, a, b)
    }

    fn a_l(&self, a: u32, x: u32) -> u32 {
        bilinear(&self.a_on_l, a, x)
    }

    fn a_m(&self, a: u32, m: u32) -> u32 {
        bilinear(&self.a_on_m, a, m)
    }

    fn has_omega(&self, n: usize) -> bool {
        self.theory != Theory::CE && n >= 2
    }

    /// Parameters of a degree-`n` cochain (`n ≤ 2`): `(is_omega, support, c)`.
    fn params(&self, n: usize) -> Vec<Param> {
        let mut out = Vec::new();
        for s in 0u32..1 << self.dim_l {
            if s.count_ones() as usize == n {
                for c in 0..self.dim_m {
                    out.push(Param::Phi(s, c));
                }
            }
        }
        if self.has_omega(n) {
            for i in 0..self.dim_l {
                for c in 0..self.dim_m {
                    out.push(Param::Omega(i, c));
                }
            }
        }
        out
    }

    /// Pointwise constraint residuals of the cochain with a single parameter.
    fn constraint_signature(&self, n: usize, f: &Cochain) -> Sig {
        let mut s = Sig::default();
        let nl = 1u32 << self.dim_l;
        let na = 1u32 << self.dim_a;
        match (self.theory, n) {
            (Theory::LR, 1) => {
                for a in 0..na {
                    for x in 0..nl {
                        s.push(f.phi(self, &[self.a_l(a, x)]) ^ self.a_m(a, f.phi(self, &[x])));
                    }
                }
            }
            (Theory::LR, 2) => {
                for a in 0..na {
                    let a2 = self.a_mul(a, a);
                    for x in 0..nl {
                        let ax = self.a_l(a, x);
                        for y in 0..nl {
                            s.push(f.phi(self, &[ax, y]) ^ self.a_m(a, f.phi(self, &[x, y])));
                        }
                        s.push(f.omega(self, ax) ^ self.a_m(a2, f.omega(self, x)));
                    }
                }
            }
            (Theory::PA, 1) => {
                for x in 0..nl {
                    for y in 0..nl {
                        let xy = self.a_mul(x, y);
                        s.push(
                            f.phi(self, &[xy])
                                ^ self.a_m(x, f.phi(self, &[y]))
                                ^ self.a_m(y, f.phi(self, &[x])),
                        );
                    }
                }
            }
            (Theory::PA, 2) => {
                for x in 0..nl {
                    let x2 = self.a_mul(x, x);
                    for y in 0..nl {
                        let xy = self.a_mul(x, y);
                        let y2 = self.a_mul(y, y);
                        for z in 0..nl {
                            s.push(
                                f.phi(self, &[xy, z])
                                    ^ self.a_m(x, f.phi(self, &[y, z]))
                                    ^ self.a_m(y, f.phi(self, &[x, z])),
                            );
                        }
                        s.push(
                            f.omega(self, xy)
                                ^ self.a_m(x2, f.omega(self, y))
                                ^ self.a_m(y2, f.omega(self, x))
                                ^ self.a_m(xy, f.phi(self, &[x, y])),
                        );
                    }
                }
            }
            _ => {}
        }
        s
    }

    /// Pointwise values of the differential of a degree-`n` cochain.
    fn image_signature(&self, n: usize, f: &Cochain) -> Sig {
        let mut s = Sig::default();
        let nl = 1u32 << self.dim_l;
        match n {
            0 => {
                for x in 0..nl {
                    s.push(self.rho(x, f.phi(self, &[])));
                }
            }
            1 => {
                for x in 0..nl {
                    for y in 0..nl {
                        s.push(
                            f.phi(self, &[self.br(x, y)])
                                ^ self.rho(x, f.phi(self, &[y]))
                                ^ self.rho(y, f.phi(self, &[x])),
                        );
                    }
                    if self.has_omega(2) {
                        s.push(f.phi(self, &[self.sq(x)]) ^ self.rho(x, f.phi(self, &[x])));
                    }
                }
            }
            2 => {
                for x in 0..nl {
                    for y in 0..nl {
                        for z in 0..nl {
                            s.push(
                                f.phi(self, &[self.br(x, y), z])
                                    ^ f.phi(self, &[self.br(x, z), y])
                                    ^ f.phi(self, &[self.br(y, z), x])
                                    ^ self.rho(x, f.phi(self, &[y, z]))
                                    ^ self.rho(y, f.phi(self, &[x, z]))
                                    ^ self.rho(z, f.phi(self, &[x, y])),
                            );
                        }
                    }
                    if self.has_omega(3) {
                        for z in 0..nl {
                            s.push(
                                self.rho(x, f.phi(self, &[x, z]))
                                    ^ f.phi(self, &[self.sq(x), z])
                                    ^ self.rho(z, f.omega(self, x))
                                    ^ f.phi(self, &[self.br(x, z), x]),
                            );
                        }
                    }
                }
            }
            _ => panic!("oracle handles degrees 0..=2"),
        }
        s
    }
}

#[derive(Clone, Copy)]
enum Param {
    /// `φ(e_S)` has coordinate `c` for the basis tuple with support `S`.
    Phi(u32, usize),
    /// `ω(e_i)` has coordinate `c`.
    Omega(usize, usize),
}

/// A basis cochain: exactly one parameter is 1.
struct Cochain {
    n: usize,
    p: Param,
}

impl Cochain {
    /// `φ(args)` by alternating multilinear expansion.
    fn phi(&self, _s: &Setting, args: &[u32]) -> u32 {
        debug_assert_eq!(args.len(), self.n);
        let Param::Phi(support, c) = self.p else {
            return 0;
        };
        // Count the ways to pick one distinct basis index from each argument
        // so that the picks are exactly `support`.
        let idx: Vec<usize> = bits(support).collect();
        let mut count = 0u32;
        permutations(&idx, &mut |perm| {
            if perm.iter().zip(args).all(|(&i, &a)| a >> i & 1 == 1) {
                count += 1;
            }
        });
        if count & 1 == 1 {
            1 << c
        } else {
            0
        }
    }

    /// `ω(x)` for `n = 2`, through the sum rule.
    fn omega(&self, s: &Setting, x: u32) -> u32 {
        let mut out = 0;
        if let Param::Omega(i, c) = self.p {
            if x >> i & 1 == 1 {
                out ^= 1 << c;
            }
        }
        let xs: Vec<usize> = bits(x).collect();
        for (k, &i) in xs.iter().enumerate() {
            for &j in &xs[k + 1..] {
                out ^= self.phi(s, &[1 << i, 1 << j]);
            }
        }
        out
    }
}

fn permutations(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn go(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            go(v, k + 1, f);
            v.swap(k, i);
        }
    }
    go(&mut items.to_vec(), 0, f)
}

/// Bit signature of pointwise values (8 bits per value; modules of dim ≤ 8).
#[derive(Default, Clone, PartialEq, Eq, Hash)]
struct Sig {
    words: Vec<u64>,
    len: usize,
}

impl Sig {
    fn push(&mut self, v: u32) {
        for b in 0..8 {
            if self.len % 64 == 0 {
                self.words.push(0);
            }
            if v >> b & 1 == 1 {
                *self.words.last_mut().unwrap() |= 1 << (self.len % 64);
            }
            self.len += 1;
        }
    }

    fn xor(&mut self, o: &Sig) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleDims {
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
}

fn log2_exact(count: u64) -> usize {
    assert!(count.is_power_of_two(), "subspace count {count} is not a power of two");
    count.trailing_zeros() as usize
}

/// Parameter space sizes above this are refused.
pub const MAX_PARAMS: usize = 24;

/// `(dim C^n, dim Z^n, dim B^n)` for `n ∈ {1, 2}` by enumeration.
pub fn dims(s: &Setting, n: usize) -> OracleDims {
    assert!((1..=2).contains(&n));
    let params = s.params(n);
    assert!(params.len() <= MAX_PARAMS, "{} parameters", params.len());
    let sigs: Vec<(Sig, Sig)> = params
        .iter()
        .map(|&p| {
            let f = Cochain { n, p };
            (s.constraint_signature(n, &f), s.image_signature(n, &f))
        })
        .collect();
    let (mut cons, mut img) = match sigs.first() {
        Some((c, i)) => (zero_like(c), zero_like(i)),
        None => (Sig::default(), Sig::default()),
    };
    let (mut c_count, mut z_count) = (1u64, 1u64);
    for step in 1u64..1 << params.len() {
        let k = step.trailing_zeros() as usize;
        cons.xor(&sigs[k].0);
        img.xor(&sigs[k].1);
        if cons.is_zero() {
            c_count += 1;
            if img.is_zero() {
                z_count += 1;
            }
        }
    }

    let prev = s.params(n - 1);
    assert!(prev.len() <= MAX_PARAMS);
    let prev_sigs: Vec<(Sig, Sig)> = prev
        .iter()
        .map(|&p| {
            let f = Cochain { n: n - 1, p };
            (s.constraint_signature(n - 1, &f), s.image_signature(n - 1, &f))
        })
        .collect();
    let mut images = HashSet::new();
    if let Some((c, i)) = prev_sigs.first() {
        let (mut cons, mut img) = (zero_like(c), zero_like(i));
        images.insert(img.clone());
        for step in 1u64..1 << prev.len() {
            let k = step.trailing_zeros() as usize;
            cons.xor(&prev_sigs[k].0);
            img.xor(&prev_sigs[k].1);
            if cons.is_zero() {
                images.insert(img.clone());
            }
        }
    } else {
        images.insert(Sig::default());
    }
    OracleDims {
        dim_c: log2_exact(c_count),
        dim_z: log2_exact(z_count),
        dim_b: log2_exact(images.len() as u64),
    }
}

fn zero_like(s: &Sig) -> Sig {
    Sig {
        words: vec![0; s.words.len()],
        len: s.len,
    }
}
