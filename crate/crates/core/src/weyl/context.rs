use std::fmt;
use std::sync::Arc;

use super::WeylError;

/// Role of a generator inside a [`WeylContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Spatial coordinate `x_i`.
    X(usize),
    /// Partial derivative `∂_i`.
    D(usize),
    /// Auxiliary coordinate `v`.
    V,
    /// Auxiliary derivative `∂_v`.
    Dv,
    /// Homogenizing variable `h`; central.
    H,
}

/// The variable universe of a Weyl algebra.
///
/// Generators are laid out as `x_1..x_n, ∂_1..∂_n`, then `v, ∂_v` when the
/// auxiliary pair is present, then `h` when the context is homogenized.
/// Monomials are exponent vectors over this layout.
#[derive(Clone)]
pub struct WeylContext(Arc<Inner>);

struct Inner {
    spatial: Vec<String>,
    aux: Option<String>,
    hom: Option<String>,
    pairs: Vec<(usize, usize)>,
}

impl WeylContext {
    /// Plain Weyl algebra over the given coordinate names.
    ///
    /// Names must be identifiers starting with a letter other than `D`
    /// (`D` + name is the partial derivative token) and must be distinct.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, WeylError> {
        let mut spatial: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !is_user_identifier(name) {
                return Err(WeylError::InvalidName(name.to_string()));
            }
            if spatial.iter().any(|s| s == name) {
                return Err(WeylError::DuplicateName(name.to_string()));
            }
            spatial.push(name.to_string());
        }
        Ok(Self::build(spatial, None, None))
    }

    fn build(spatial: Vec<String>, aux: Option<String>, hom: Option<String>) -> Self {
        let n = spatial.len();
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
        if aux.is_some() {
            pairs.push((2 * n, 2 * n + 1));
        }
        WeylContext(Arc::new(Inner {
            spatial,
            aux,
            hom,
            pairs,
        }))
    }

    fn fresh_name(&self, stem: &str) -> String {
        let taken = |c: &str| {
            self.0.spatial.iter().any(|s| s == c)
                || self.0.aux.as_deref() == Some(c)
                || self.0.hom.as_deref() == Some(c)
        };
        if !taken(stem) {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|c| !taken(c))
            .expect("unbounded search")
    }

    /// The same coordinates with the auxiliary pair `(v, ∂_v)` adjoined.
    /// The auxiliary name is chosen to avoid every user name.
    pub fn with_aux(&self) -> Self {
        if self.has_aux() {
            return self.clone();
        }
        let aux = self.fresh_name("v");
        let hom = self.0.hom.clone();
        Self::build(self.0.spatial.clone(), Some(aux), hom)
    }

    /// The context without the homogenizing variable and without the
    /// auxiliary pair.
    pub fn plain(&self) -> Self {
        if !self.has_aux() && !self.has_hom() {
            return self.clone();
        }
        Self::build(self.0.spatial.clone(), None, None)
    }

    /// The context with the homogenizing variable `h` adjoined.
    pub fn homogenized(&self) -> Self {
        if self.has_hom() {
            return self.clone();
        }
        let hom = self.fresh_name("h");
        Self::build(self.0.spatial.clone(), self.0.aux.clone(), Some(hom))
    }

    /// The context with `h` removed.
    pub fn dehomogenized(&self) -> Self {
        if !self.has_hom() {
            return self.clone();
        }
        Self::build(self.0.spatial.clone(), self.0.aux.clone(), None)
    }

    /// Number of spatial coordinates `n`.
    pub fn n(&self) -> usize {
        self.0.spatial.len()
    }

    pub fn has_aux(&self) -> bool {
        self.0.aux.is_some()
    }

    pub fn has_hom(&self) -> bool {
        self.0.hom.is_some()
    }

    /// Total number of generators.
    pub fn num_gens(&self) -> usize {
        2 * self.n() + if self.has_aux() { 2 } else { 0 } + usize::from(self.has_hom())
    }

    pub fn spatial_names(&self) -> &[String] {
        &self.0.spatial
    }

    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i < self.n());
        i
    }

    pub fn d(&self, i: usize) -> usize {
        debug_assert!(i < self.n());
        self.n() + i
    }

    /// Index of `v`.
    pub fn v(&self) -> Option<usize> {
        self.has_aux().then(|| 2 * self.n())
    }

    /// Index of `∂_v`.
    pub fn dv(&self) -> Option<usize> {
        self.has_aux().then(|| 2 * self.n() + 1)
    }

    /// Index of `h`.
    pub fn h(&self) -> Option<usize> {
        self.has_hom().then(|| self.num_gens() - 1)
    }

    /// Conjugate pairs `(x-type index, ∂-type index)`, spatial pairs first.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0.pairs
    }

    pub fn generator(&self, idx: usize) -> Generator {
        let n = self.n();
        if idx < n {
            Generator::X(idx)
        } else if idx < 2 * n {
            Generator::D(idx - n)
        } else if self.has_aux() && idx == 2 * n {
            Generator::V
        } else if self.has_aux() && idx == 2 * n + 1 {
            Generator::Dv
        } else {
            assert!(
                self.has_hom() && idx == self.num_gens() - 1,
                "generator index out of range"
            );
            Generator::H
        }
    }

    /// Printable name of generator `idx`.
    pub fn name(&self, idx: usize) -> String {
        match self.generator(idx) {
            Generator::X(i) => self.0.spatial[i].clone(),
            Generator::D(i) => format!("D{}", self.0.spatial[i]),
            Generator::V => self.0.aux.clone().unwrap_or_default(),
            Generator::Dv => format!("D{}", self.0.aux.as_deref().unwrap_or_default()),
            Generator::H => self.0.hom.clone().unwrap_or_default(),
        }
    }

    /// Generator index for a token such as `x`, `Dx`, the aux names or `h`.
    pub fn lookup(&self, token: &str) -> Option<usize> {
        (0..self.num_gens()).find(|&i| self.name(i) == token)
    }

    /// Whether generator `idx` is of ∂-type (spatial or auxiliary).
    pub fn is_partial(&self, idx: usize) -> bool {
        matches!(self.generator(idx), Generator::D(_) | Generator::Dv)
    }
}

fn is_user_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() && c != 'D' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PartialEq for WeylContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.spatial == other.0.spatial
                && self.0.aux == other.0.aux
                && self.0.hom == other.0.hom)
    }
}

impl Eq for WeylContext {}

impl fmt::Debug for WeylContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.num_gens()).map(|i| self.name(i)).collect();
        write!(f, "WeylContext[{}]", names.join(", "))
    }
}
