//! Algebra of finite partial injections.
//!
//! A [`PartialInjection`] is a partial injective function between two indexed
//! finite sets: no source maps twice, no target is hit twice. These are the
//! behavior functions `f : Q⁻ ⇀ Q⁺` that the sweeping-to-one-way
//! constructions compute symbol by symbol, via composition with the
//! per-symbol transition injections and their inverses.
//!
//! Values are immutable and tiny (state counts are desk scale), so they are
//! stored as plain `Vec<Option<usize>>` tables with no packing tricks.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuncMathError {
    #[error("dimension mismatch: inner codomain {inner_codomain} vs outer domain {outer_domain}")]
    DimensionMismatch {
        inner_codomain: usize,
        outer_domain: usize,
    },
    #[error("source index {0} out of range")]
    SourceOutOfRange(usize),
    #[error("target index {0} out of range")]
    TargetOutOfRange(usize),
    #[error("source {0} mapped twice")]
    DuplicateSource(usize),
    #[error("target {0} hit twice, map not injective")]
    DuplicateTarget(usize),
    #[error("restriction index {0} is outside the domain")]
    RestrictOutsideDomain(usize),
    #[error("completion requires equal domain and codomain sizes, got {0} and {1}")]
    NotSquare(usize, usize),
}

/// A partial injective function from `{0, …, domain_size-1}` to
/// `{0, …, codomain_size-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInjection {
    domain_size: usize,
    codomain_size: usize,
    map: Vec<Option<usize>>,
}

impl PartialInjection {
    /// The nowhere-defined injection.
    pub fn empty(domain_size: usize, codomain_size: usize) -> Self {
        PartialInjection {
            domain_size,
            codomain_size,
            map: vec![None; domain_size],
        }
    }

    /// The identity on an `n`-element set.
    pub fn identity(n: usize) -> Self {
        PartialInjection {
            domain_size: n,
            codomain_size: n,
            map: (0..n).map(Some).collect(),
        }
    }

    /// Builds an injection from explicit `(source, target)` pairs, checking
    /// ranges and injectivity.
    pub fn from_pairs(
        domain_size: usize,
        codomain_size: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, FuncMathError> {
        let mut map = vec![None; domain_size];
        let mut hit = vec![false; codomain_size];
        for &(src, tgt) in pairs {
            if src >= domain_size {
                return Err(FuncMathError::SourceOutOfRange(src));
            }
            if tgt >= codomain_size {
                return Err(FuncMathError::TargetOutOfRange(tgt));
            }
            if map[src].is_some() {
                return Err(FuncMathError::DuplicateSource(src));
            }
            if hit[tgt] {
                return Err(FuncMathError::DuplicateTarget(tgt));
            }
            map[src] = Some(tgt);
            hit[tgt] = true;
        }
        Ok(PartialInjection {
            domain_size,
            codomain_size,
            map,
        })
    }

    /// Builds an injection from a raw table, checking injectivity.
    pub fn from_table(
        codomain_size: usize,
        map: Vec<Option<usize>>,
    ) -> Result<Self, FuncMathError> {
        let mut hit = vec![false; codomain_size];
        for tgt in map.iter().flatten() {
            if *tgt >= codomain_size {
                return Err(FuncMathError::TargetOutOfRange(*tgt));
            }
            if hit[*tgt] {
                return Err(FuncMathError::DuplicateTarget(*tgt));
            }
            hit[*tgt] = true;
        }
        Ok(PartialInjection {
            domain_size: map.len(),
            codomain_size,
            map,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    /// Applies the function, `None` where undefined.
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn is_defined_on(&self, x: usize) -> bool {
        self.apply(x).is_some()
    }

    /// Sources where the function is defined, ascending.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.domain_size)
            .filter(|&x| self.map[x].is_some())
            .collect()
    }

    /// Targets that are hit, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.map.iter().flatten().copied().collect();
        img.sort_unstable();
        img
    }

    pub fn image_contains(&self, y: usize) -> bool {
        self.map.iter().flatten().any(|&t| t == y)
    }

    /// Number of sources where the function is defined.
    pub fn domain_len(&self) -> usize {
        self.map.iter().flatten().count()
    }

    /// Defined `(source, target)` pairs in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(src, tgt)| tgt.map(|t| (src, t)))
    }

    pub fn is_total(&self) -> bool {
        self.domain_len() == self.domain_size
    }

    pub fn is_bijection(&self) -> bool {
        self.domain_size == self.codomain_size && self.is_total()
    }

    /// Composition `outer ∘ inner`: defined on `x` iff `inner(x)` and
    /// `outer(inner(x))` both are.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, FuncMathError> {
        if inner.codomain_size != outer.domain_size {
            return Err(FuncMathError::DimensionMismatch {
                inner_codomain: inner.codomain_size,
                outer_domain: outer.domain_size,
            });
        }
        let map = inner
            .map
            .iter()
            .map(|mid| mid.and_then(|m| outer.apply(m)))
            .collect();
        Ok(PartialInjection {
            domain_size: inner.domain_size,
            codomain_size: outer.codomain_size,
            map,
        })
    }

    /// The inverse injection: `inverse(f)(y) = x` iff `f(x) = y`.
    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.codomain_size];
        for (src, tgt) in self.pairs() {
            map[tgt] = Some(src);
        }
        PartialInjection {
            domain_size: self.codomain_size,
            codomain_size: self.domain_size,
            map,
        }
    }

    /// Restriction to a subset of the domain; errors if `subset` mentions a
    /// source where the function is undefined.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self, FuncMathError> {
        let mut map = vec![None; self.domain_size];
        for &x in subset {
            match self.apply(x) {
                Some(t) => map[x] = Some(t),
                None => return Err(FuncMathError::RestrictOutsideDomain(x)),
            }
        }
        Ok(PartialInjection {
            domain_size: self.domain_size,
            codomain_size: self.codomain_size,
            map,
        })
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (src, tgt)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{src}→{tgt}")?;
        }
        write!(f, "}}:{}⇀{}", self.domain_size, self.codomain_size)
    }
}

/// All subsets of `{0, …, n-1}` in lexicographic order of their ascending
/// element sequences: `[] < [0] < [0,1] < [0,1,2] < [0,2] < [1] < …`.
pub fn subsets_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    fn extend(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let next_min = prefix.last().map_or(0, |&l| l + 1);
        for x in next_min..n {
            prefix.push(x);
            out.push(prefix.clone());
            extend(n, prefix, out);
            prefix.pop();
        }
    }
    extend(n, &mut Vec::new(), &mut out);
    out
}

/// Enumerates every partial injection from an `m`-set to an `n`-set exactly
/// once. Canonical order: domain subsets in lexicographic order (see
/// [`subsets_lex`]), and for each subset all injective target tuples in
/// lexicographic order.
pub fn enumerate_partial_injections(m: usize, n: usize) -> Vec<PartialInjection> {
    let mut out = Vec::new();
    for dom in subsets_lex(m) {
        if dom.len() > n {
            continue;
        }
        let mut targets = Vec::with_capacity(dom.len());
        let mut used = vec![false; n];
        assign(&dom, n, &mut targets, &mut used, &mut |targets: &[usize]| {
            let pairs: Vec<(usize, usize)> =
                dom.iter().copied().zip(targets.iter().copied()).collect();
            out.push(PartialInjection::from_pairs(m, n, &pairs).expect("enumeration is injective"));
        });
    }
    return out;

    fn assign(
        dom: &[usize],
        n: usize,
        targets: &mut Vec<usize>,
        used: &mut Vec<bool>,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if targets.len() == dom.len() {
            emit(targets);
            return;
        }
        for t in 0..n {
            if !used[t] {
                used[t] = true;
                targets.push(t);
                assign(dom, n, targets, used, emit);
                targets.pop();
                used[t] = false;
            }
        }
    }
}

/// Number of partial injections from an `m`-set to an `n`-set:
/// `Σ_s C(m,s)·C(n,s)·s!`.
pub fn count_partial_injections(m: usize, n: usize) -> u64 {
    let mut total = 0u64;
    for s in 0..=m.min(n) {
        total += binomial(m, s) * binomial(n, s) * factorial(s);
    }
    total
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
