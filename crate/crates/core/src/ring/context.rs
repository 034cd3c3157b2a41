use std::fmt;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::MonomialOrder;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Ambient polynomial ring `F_p[x_1, ..., x_n]` together with a monomial order.
///
/// Cheap to clone; two contexts compare equal when characteristic, variable
/// list and order coincide.
#[derive(Clone)]
pub struct RingContext(Arc<RingData>);

pub(crate) fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Self::from_field(field, vars.iter().map(|v| v.as_ref().to_string()).collect(), order)
    }

    pub(crate) fn from_field(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidVariables(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > vars.len() {
                return Err(Error::invalid("elimination block larger than variable list"));
            }
        }
        Ok(RingContext(Arc::new(RingData { field, vars, order })))
    }

    /// Grevlex ring, the common case.
    pub fn grevlex<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Self> {
        Self::new(p, vars, MonomialOrder::Grevlex)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        Self::from_field(self.field(), self.0.vars.clone(), order)
    }

    /// Ring with `names` appended to the variable list, keeping the order kind.
    pub fn extend<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let mut vars = self.0.vars.clone();
        for n in names {
            let n = n.as_ref();
            if vars.iter().any(|v| v == n) {
                return Err(Error::InvalidVariables(format!("variable `{n}` already present")));
            }
            vars.push(n.to_string());
        }
        Self::from_field(self.field(), vars, self.order())
    }

    pub fn same(&self, other: &RingContext) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for RingContext {}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}; {}]", self.0.field, self.0.vars.join(","), self.0.order.name())
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
