use crate::error::{Error, Result};
use crate::lvalues::QuadCharacter;

/// Weight, index, level and nebentypus of a Jacobi form on
/// `Gamma_0(N^2) x| (NZ x Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormSignature {
    weight: i64,
    index: i64,
    level: i64,
    character: Option<QuadCharacter>,
}

impl FormSignature {
    pub fn new(
        weight: i64,
        index: i64,
        level: i64,
        character: Option<QuadCharacter>,
    ) -> Result<Self> {
        if weight < 1 || index < 1 || level < 1 {
            return Err(Error::arg(format!(
                "signature needs positive k, m, N (got k={weight}, m={index}, N={level})"
            )));
        }
        if let Some(chi) = character {
            if level == 1 {
                return Err(Error::arg("level 1 forces the trivial character"));
            }
            let n2 = (level as u64) * (level as u64);
            if !n2.is_multiple_of(chi.modulus()) {
                return Err(Error::arg(format!(
                    "character modulus {} does not divide N^2 = {n2}",
                    chi.modulus()
                )));
            }
        }
        Ok(FormSignature {
            weight,
            index,
            level,
            character,
        })
    }

    /// Level one, trivial character.
    pub fn full(weight: i64, index: i64) -> Result<Self> {
        Self::new(weight, index, 1, None)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn character(&self) -> Option<QuadCharacter> {
        self.character
    }

    /// `chi(n)`; the trivial character is 1 everywhere.
    pub fn chi(&self, n: i64) -> i8 {
        self.character.map_or(1, |c| c.eval(n))
    }

    /// Period `2mN` of the residue coordinate `rho`.
    pub fn rho_modulus(&self) -> i64 {
        2 * self.index * self.level
    }

    pub fn with_level(&self, level: i64) -> Result<Self> {
        Self::new(self.weight, self.index, level, self.character)
    }

    pub fn with_index(&self, index: i64) -> Result<Self> {
        Self::new(self.weight, index, self.level, self.character)
    }
}
