use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of parameter symbols in any context.
pub const MAX_SYMBOLS: usize = 3;

/// A parameter symbol. The declaration order is the canonical symbol order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "alpha")]
    Alpha,
}

impl Symbol {
    pub const ALL: [Symbol; MAX_SYMBOLS] = [Symbol::Q, Symbol::T, Symbol::Alpha];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Q => "q",
            Symbol::T => "t",
            Symbol::Alpha => "alpha",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Symbol::Q => "q",
            Symbol::T => "t",
            Symbol::Alpha => "\\alpha",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Symbol::Q),
            "t" => Ok(Symbol::T),
            "alpha" | "a" | "α" => Ok(Symbol::Alpha),
            other => Err(Error::UnknownSymbol(other.to_string())),
        }
    }
}

/// An ordered set of parameter symbols: the coefficient context of a computation.
///
/// Values from different contexts never mix implicitly.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Params {
    mask: u8,
}

impl Params {
    pub const NONE: Params = Params { mask: 0 };
    pub const Q: Params = Params { mask: 0b001 };
    pub const T: Params = Params { mask: 0b010 };
    pub const QT: Params = Params { mask: 0b011 };
    pub const ALPHA: Params = Params { mask: 0b100 };

    pub fn new(symbols: &[Symbol]) -> Self {
        Params {
            mask: symbols.iter().fold(0, |m, s| m | s.bit()),
        }
    }

    pub fn contains(self, sym: Symbol) -> bool {
        self.mask & sym.bit() != 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// Symbols in canonical order.
    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        Symbol::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    /// Position of `sym` inside exponent vectors of this context.
    pub fn index_of(self, sym: Symbol) -> Option<usize> {
        if !self.contains(sym) {
            return None;
        }
        Some((self.mask & (sym.bit() - 1)).count_ones() as usize)
    }

    pub fn symbol_at(self, idx: usize) -> Symbol {
        self.symbols().nth(idx).expect("symbol index within context")
    }

    pub fn with(self, sym: Symbol) -> Self {
        Params {
            mask: self.mask | sym.bit(),
        }
    }

    pub fn without(self, sym: Symbol) -> Self {
        Params {
            mask: self.mask & !sym.bit(),
        }
    }

    pub fn union(self, other: Params) -> Self {
        Params {
            mask: self.mask | other.mask,
        }
    }

    pub fn is_subset_of(self, other: Params) -> bool {
        self.mask & !other.mask == 0
    }

    pub(crate) fn check_same(self, other: Params) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, s) in self.symbols().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(s.name())?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let names: Vec<&str> = self.symbols().map(Symbol::name).collect();
        names.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(deserializer)?;
        let mut syms = Vec::with_capacity(names.len());
        for n in names {
            syms.push(n.parse::<Symbol>().map_err(serde::de::Error::custom)?);
        }
        Ok(Params::new(&syms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_positions_follow_canonical_order() {
        assert_eq!(Params::QT.index_of(Symbol::Q), Some(0));
        assert_eq!(Params::QT.index_of(Symbol::T), Some(1));
        assert_eq!(Params::T.index_of(Symbol::T), Some(0));
        assert_eq!(Params::QT.index_of(Symbol::Alpha), None);
        assert_eq!(Params::new(&[Symbol::Alpha, Symbol::Q]).index_of(Symbol::Alpha), Some(1));
    }

    #[test]
    fn display() {
        assert_eq!(Params::QT.to_string(), "[q, t]");
        assert_eq!(Params::NONE.to_string(), "[]");
    }
}
