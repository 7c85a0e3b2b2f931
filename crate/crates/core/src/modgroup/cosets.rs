use std::sync::Arc;

use crate::error::{Error, Result};

use super::matrix::{gl2_order, ModMatrix};
use super::subgroup::OpenSubgroup;

const NONE: u32 = u32::MAX;

/// Left cosets x G of a subgroup G in GL2(Z/NZ), each named by its least
/// element. Coset ids increase with the representative's code.
#[derive(Debug)]
pub struct CosetTable {
    n: u32,
    coset_of: Vec<u32>,
    reps: Vec<ModMatrix>,
    group: OpenSubgroup,
}

impl CosetTable {
    pub fn new(g: &OpenSubgroup) -> CosetTable {
        let n = g.modulus();
        let size = (n as usize).pow(4);
        let mut coset_of = vec![NONE; size];
        let mut reps = Vec::new();
        for code in 0..size as u32 {
            if coset_of[code as usize] != NONE {
                continue;
            }
            let x = ModMatrix::from_code(n, code);
            if !x.is_invertible() {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for h in g.elements() {
                coset_of[x.mul(h).code() as usize] = id;
            }
        }
        CosetTable {
            n,
            coset_of,
            reps,
            group: g.clone(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn group(&self) -> &OpenSubgroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn coset(&self, m: &ModMatrix) -> u32 {
        self.coset_of[m.code() as usize]
    }

    pub fn rep(&self, id: u32) -> ModMatrix {
        self.reps[id as usize]
    }
}

/// Double cosets A \ GL2(Z/NZ) / G with A a list of matrices (typically
/// the image of an automorphism group, possibly with repetitions).
#[derive(Debug, Clone)]
pub struct DoubleCosetSpace {
    table: Arc<CosetTable>,
    aut: Vec<ModMatrix>,
    /// Double coset index of each left coset.
    dc_of: Vec<u32>,
    reps: Vec<ModMatrix>,
    stabilizers: Vec<u32>,
    sizes: Vec<u64>,
}

impl DoubleCosetSpace {
    pub fn new(table: Arc<CosetTable>, aut: &[ModMatrix]) -> Result<DoubleCosetSpace> {
        if let Some(a) = aut.iter().find(|a| a.modulus() != table.n) {
            return Err(Error::ModulusMismatch(table.n, a.modulus()));
        }
        let mut dc_of = vec![NONE; table.len()];
        let mut reps = Vec::new();
        let mut stabilizers = Vec::new();
        let mut sizes = Vec::new();
        let gsize = table.group.order();
        for id in 0..table.len() as u32 {
            if dc_of[id as usize] != NONE {
                continue;
            }
            let dc = reps.len() as u32;
            let x = table.rep(id);
            let mut stack = vec![id];
            dc_of[id as usize] = dc;
            let mut count = 0u64;
            while let Some(c) = stack.pop() {
                count += 1;
                let y = table.rep(c);
                for a in aut {
                    let z = table.coset(&a.mul(&y));
                    if dc_of[z as usize] == NONE {
                        dc_of[z as usize] = dc;
                        stack.push(z);
                    }
                }
            }
            let stab = aut.iter().filter(|a| table.coset(&a.mul(&x)) == id).count() as u32;
            reps.push(x);
            stabilizers.push(stab);
            sizes.push(count * gsize);
        }
        Ok(DoubleCosetSpace {
            table,
            aut: aut.to_vec(),
            dc_of,
            reps,
            stabilizers,
            sizes,
        })
    }

    /// Convenience constructor building a fresh coset table.
    pub fn from_groups(aut: &[ModMatrix], g: &OpenSubgroup) -> Result<DoubleCosetSpace> {
        Self::new(Arc::new(CosetTable::new(g)), aut)
    }

    pub fn table(&self) -> &Arc<CosetTable> {
        &self.table
    }

    pub fn automorphisms(&self) -> &[ModMatrix] {
        &self.aut
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Representatives, in increasing code order.
    pub fn reps(&self) -> &[ModMatrix] {
        &self.reps
    }

    /// #{alpha in the automorphism list : alpha rep G = rep G}.
    pub fn stabilizer(&self, i: usize) -> u32 {
        self.stabilizers[i]
    }

    /// |A rep G| as a set of matrices.
    pub fn size(&self, i: usize) -> u64 {
        self.sizes[i]
    }

    /// Index of the double coset containing m.
    pub fn index_of(&self, m: &ModMatrix) -> usize {
        self.dc_of[self.table.coset(m) as usize] as usize
    }

    /// The least element of A m G.
    pub fn canonicalize(&self, m: &ModMatrix) -> ModMatrix {
        self.reps[self.index_of(m)]
    }

    pub fn covers_group(&self) -> bool {
        self.sizes.iter().sum::<u64>() == gl2_order(self.table.n)
    }
}
