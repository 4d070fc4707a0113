use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// One tensor factor of an object word: an atom, possibly dualised.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub atom: String,
    pub dual: bool,
}

impl Factor {
    pub fn plain(atom: impl Into<String>) -> Self {
        Factor {
            atom: atom.into(),
            dual: false,
        }
    }

    pub fn dual(atom: impl Into<String>) -> Self {
        Factor {
            atom: atom.into(),
            dual: true,
        }
    }

    pub fn dualized(&self) -> Self {
        Factor {
            atom: self.atom.clone(),
            dual: !self.dual,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.atom)?;
        if self.dual {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// A finite tensor product of factors; the empty word is the unit `I`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectWord(pub Vec<Factor>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn atom(name: impl Into<String>) -> Self {
        ObjectWord(vec![Factor::plain(name)])
    }

    /// `n` copies of the plain atom.
    pub fn power(name: &str, n: usize) -> Self {
        ObjectWord(vec![Factor::plain(name); n])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    pub fn tensor(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }

    /// `(A ⊗ B)* = B* ⊗ A*`.
    pub fn dual(&self) -> ObjectWord {
        ObjectWord(self.0.iter().rev().map(Factor::dualized).collect())
    }
}

impl From<Vec<Factor>> for ObjectWord {
    fn from(v: Vec<Factor>) -> Self {
        ObjectWord(v)
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (i, factor) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomDecl {
    pub name: String,
    pub frobenius: bool,
    pub self_dual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub dom: ObjectWord,
    pub cod: ObjectWord,
    /// Explicit adjoint; `None` means the adjoint is the formal mark `name†`.
    pub dagger_partner: Option<String>,
}

/// Object atoms and generating morphisms of a free dagger compact category.
///
/// Frobenius atoms are always self-dual: their spiders have undirected legs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    atoms: Vec<AtomDecl>,
    generators: Vec<GeneratorDecl>,
    atom_index: HashMap<String, usize>,
    generator_index: HashMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_atom(&mut self, name: &str, frobenius: bool, self_dual: bool) -> Result<()> {
        if self.atom_index.contains_key(name) {
            return Err(Error::Signature(format!("object `{name}` declared twice")));
        }
        if name == "I" {
            return Err(Error::Signature("`I` is reserved for the unit object".into()));
        }
        self.atom_index.insert(name.to_string(), self.atoms.len());
        self.atoms.push(AtomDecl {
            name: name.to_string(),
            frobenius,
            self_dual: self_dual || frobenius,
        });
        Ok(())
    }

    /// Declares a generator. The words are normalised against the declared atoms.
    pub fn add_generator(&mut self, name: &str, dom: ObjectWord, cod: ObjectWord) -> Result<()> {
        if self.generator_index.contains_key(name) {
            return Err(Error::Signature(format!("generator `{name}` declared twice")));
        }
        let dom = self.normalize(&dom)?;
        let cod = self.normalize(&cod)?;
        self.generator_index
            .insert(name.to_string(), self.generators.len());
        self.generators.push(GeneratorDecl {
            name: name.to_string(),
            dom,
            cod,
            dagger_partner: None,
        });
        Ok(())
    }

    /// Declares `b` as the adjoint of `a` (and vice versa). `a` may equal `b`.
    pub fn set_dagger_partner(&mut self, a: &str, b: &str) -> Result<()> {
        let ga = self.generator(a)?.clone();
        let gb = self.generator(b)?.clone();
        if ga.dom != gb.cod || ga.cod != gb.dom {
            return Err(Error::Type(format!(
                "`{b}` : {} -> {} cannot be the adjoint of `{a}` : {} -> {}",
                gb.dom, gb.cod, ga.dom, ga.cod
            )));
        }
        let ia = self.generator_index[a];
        let ib = self.generator_index[b];
        self.generators[ia].dagger_partner = Some(b.to_string());
        self.generators[ib].dagger_partner = Some(a.to_string());
        Ok(())
    }

    pub fn atoms(&self) -> &[AtomDecl] {
        &self.atoms
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn has_atom(&self, name: &str) -> bool {
        self.atom_index.contains_key(name)
    }

    pub fn atom(&self, name: &str) -> Result<&AtomDecl> {
        self.atom_index
            .get(name)
            .map(|&i| &self.atoms[i])
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.generator_index.contains_key(name)
    }

    pub fn generator(&self, name: &str) -> Result<&GeneratorDecl> {
        self.generator_index
            .get(name)
            .map(|&i| &self.generators[i])
            .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
    }

    pub fn normalize_factor(&self, f: &Factor) -> Result<Factor> {
        let decl = self.atom(&f.atom)?;
        Ok(Factor {
            atom: f.atom.clone(),
            dual: f.dual && !decl.self_dual,
        })
    }

    /// Checks that every atom is declared and erases duals on self-dual atoms.
    pub fn normalize(&self, w: &ObjectWord) -> Result<ObjectWord> {
        w.0.iter()
            .map(|f| self.normalize_factor(f))
            .collect::<Result<Vec<_>>>()
            .map(ObjectWord)
    }
}
