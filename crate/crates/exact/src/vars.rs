//! Ordered variable lists.

use std::sync::Arc;

use crate::error::ArithError;
use crate::poly::MAX_VARS;

/// An ordered list of distinct variable names. Cheap to clone.
#[derive(Clone)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<VarSet, ArithError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let v: Vec<String> = names.into_iter().map(Into::into).collect();
        if v.len() > MAX_VARS {
            return Err(ArithError::TooManyVariables(v.len()));
        }
        for (k, a) in v.iter().enumerate() {
            if v[..k].contains(a) {
                return Err(ArithError::DuplicateVariable(a.clone()));
            }
        }
        Ok(VarSet(v.into()))
    }

    /// Builds a list sorted by [`var_rank`], so that independent constructions
    /// over the same names agree.
    pub fn canonical<I, S>(names: I) -> Result<VarSet, ArithError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort_by_key(|s| var_rank(s));
        v.dedup();
        VarSet::new(v)
    }

    pub fn empty() -> VarSet {
        VarSet(Arc::from(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|s| s == name)
    }

    /// Canonically ordered union of both lists.
    pub fn union(&self, o: &VarSet) -> Result<VarSet, ArithError> {
        VarSet::canonical(self.0.iter().chain(o.0.iter()).cloned())
    }
}

impl PartialEq for VarSet {
    fn eq(&self, o: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl Eq for VarSet {}

impl std::hash::Hash for VarSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl std::fmt::Debug for VarSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

/// Sort key fixing the global variable order: `q`, `tau`, `t`, `s`, other
/// parameters by name, then indexed site families `X`, `Y`, `u`, `v`, `z`, `w`.
pub fn var_rank(name: &str) -> (u8, i64, String) {
    match name {
        "q" => return (0, 0, String::new()),
        "tau" => return (1, 0, String::new()),
        "t" => return (2, 0, String::new()),
        "s" => return (3, 0, String::new()),
        _ => {}
    }
    for (k, fam) in ["X", "Y", "u", "v", "z", "w"].iter().enumerate() {
        if let Some(rest) = name.strip_prefix(fam) {
            if let Ok(i) = rest.parse::<i64>() {
                return (5 + k as u8, i, String::new());
            }
        }
    }
    (4, 0, name.to_string())
}
