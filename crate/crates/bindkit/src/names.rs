//! The table mapping user identifiers to atoms.
//!
//! Identifiers are interned in first-occurrence order starting at atom 0,
//! so re-parsing the same input always yields the same atoms. Commands that
//! compare two files share one table built from both, making identical
//! identifiers mean identical atoms. Numeric escapes (`@3`, or a bare `3`
//! where a name is expected) refer to atom 3 directly and bypass the table.

use std::collections::BTreeMap;

use bindkit_core::Atom;

#[derive(Clone, Debug, Default)]
pub struct NameTable {
    names: Vec<String>,
    by_name: BTreeMap<String, Atom>,
}

impl NameTable {
    pub fn new() -> NameTable {
        NameTable::default()
    }

    /// Resolve an identifier, assigning the next atom on first occurrence.
    pub fn intern(&mut self, name: &str) -> Atom {
        if let Some(a) = self.by_name.get(name) {
            return *a;
        }
        let atom = Atom::new(self.names.len() as u64);
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), atom);
        atom
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.by_name.get(name).copied()
    }

    pub fn name_of(&self, atom: Atom) -> Option<&str> {
        self.names.get(atom.value() as usize).map(String::as_str)
    }

    /// Resolve a name token: all-digit tokens denote the atom with that
    /// value, anything else is interned.
    pub fn resolve(&mut self, token: &str) -> Atom {
        match parse_numeric_atom(token) {
            Some(a) => a,
            None => self.intern(token),
        }
    }

    /// Display an atom: its identifier when the table knows one, otherwise
    /// its decimal value.
    pub fn display(&self, atom: Atom) -> String {
        match self.name_of(atom) {
            Some(name) => name.to_string(),
            None => atom.value().to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

pub fn parse_numeric_atom(token: &str) -> Option<Atom> {
    if !token.is_empty() && token.bytes().all(|b| b.is_ascii_digit()) {
        token.parse::<u64>().ok().map(Atom::new)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_occurrence_order() {
        let mut table = NameTable::new();
        assert_eq!(table.intern("x"), Atom::new(0));
        assert_eq!(table.intern("y"), Atom::new(1));
        assert_eq!(table.intern("x"), Atom::new(0));
        assert_eq!(table.name_of(Atom::new(1)), Some("y"));
        assert_eq!(table.display(Atom::new(5)), "5");
    }

    #[test]
    fn numeric_tokens_are_atom_values() {
        let mut table = NameTable::new();
        assert_eq!(table.resolve("7"), Atom::new(7));
        assert_eq!(table.resolve("x"), Atom::new(0));
        assert_eq!(table.len(), 1);
    }
}
