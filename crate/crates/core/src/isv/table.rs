//! Finite carriers materialized as operation tables over element indices.

use std::collections::HashMap;

use serde_json::Value;

use super::{Bracket, Carrier, Enumerable};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};

/// A finite carrier with elements 0..n and precomputed operations.
///
/// Scalar multiplication is stored per residue of the prime field, so tables only exist
/// over 𝔽_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    field: Field,
    labels: Vec<Value>,
    add: Vec<u32>,
    neg: Vec<u32>,
    smul: Vec<u32>,
    mul: Option<Vec<u32>>,
}

impl Table {
    /// Builds a table from raw operation arrays, checking sizes and index ranges.
    pub fn from_parts(
        field: Field,
        labels: Vec<Value>,
        add: Vec<u32>,
        neg: Vec<u32>,
        smul: Vec<u32>,
        mul: Option<Vec<u32>>,
    ) -> Result<Table> {
        let n = labels.len();
        let p = field.order().ok_or(Error::InfiniteField)? as usize;
        let ok = add.len() == n * n
            && neg.len() == n
            && smul.len() == p * n
            && mul.as_ref().map_or(true, |m| m.len() == n * n)
            && add
                .iter()
                .chain(&neg)
                .chain(&smul)
                .chain(mul.iter().flatten())
                .all(|&x| (x as usize) < n);
        if !ok {
            return Err(Error::Validation(
                "operation table has the wrong size or an out-of-range entry".into(),
            ));
        }
        Ok(Table {
            field,
            labels,
            add,
            neg,
            smul,
            mul,
        })
    }

    /// Materializes a finite carrier. Fails if an operation leaves the enumerated set.
    pub fn from_carrier<C: Enumerable>(c: &C) -> Result<(Table, Vec<C::Elem>)> {
        Self::build(c, None::<&fn(&C::Elem, &C::Elem) -> C::Elem>)
    }

    /// Like [`Table::from_carrier`], also tabulating the product.
    pub fn from_algebra<C: Enumerable + Bracket>(c: &C) -> Result<(Table, Vec<C::Elem>)> {
        Self::build(c, Some(&|x: &C::Elem, y: &C::Elem| c.mul(x, y)))
    }

    fn build<C: Enumerable, F: Fn(&C::Elem, &C::Elem) -> C::Elem + Sync>(
        c: &C,
        mul: Option<&F>,
    ) -> Result<(Table, Vec<C::Elem>)> {
        use rayon::prelude::*;
        let field = c.field();
        let scalars = field.elements()?;
        let elems = c.elements()?;
        let n = elems.len();
        if n > u32::MAX as usize {
            return Err(Error::BoundExceeded(format!("{n} elements")));
        }
        let index: HashMap<&C::Elem, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32))
            .collect();
        let look = |e: C::Elem, what: &str, witness: String| -> Result<u32> {
            index.get(&e).copied().ok_or_else(|| {
                Error::Validation(format!("{what} is not closed: {witness} gives {e:?}"))
            })
        };
        let add: Vec<u32> = (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (&elems[k / n], &elems[k % n]);
                look(c.add(x, y), "addition", format!("{x:?} + {y:?}"))
            })
            .collect::<Result<_>>()?;
        let neg: Vec<u32> = elems
            .iter()
            .map(|x| look(c.neg(x), "negation", format!("-{x:?}")))
            .collect::<Result<_>>()?;
        let smul: Vec<u32> = scalars
            .iter()
            .flat_map(|a| elems.iter().map(move |x| (a, x)))
            .map(|(a, x)| look(c.smul(a, x), "scalar multiplication", format!("{a}·{x:?}")))
            .collect::<Result<_>>()?;
        let mul = match mul {
            None => None,
            Some(f) => Some(
                (0..n * n)
                    .into_par_iter()
                    .map(|k| {
                        let (x, y) = (&elems[k / n], &elems[k % n]);
                        look(f(x, y), "product", format!("{x:?}·{y:?}"))
                    })
                    .collect::<Result<Vec<u32>>>()?,
            ),
        };
        let labels = elems.iter().map(|e| c.show(e)).collect();
        Ok((
            Table {
                field,
                labels,
                add,
                neg,
                smul,
                mul,
            },
            elems,
        ))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn has_product(&self) -> bool {
        self.mul.is_some()
    }

    pub fn label(&self, i: u32) -> &Value {
        &self.labels[i as usize]
    }

    pub fn index_of_label(&self, v: &Value) -> Option<u32> {
        self.labels.iter().position(|l| l == v).map(|i| i as u32)
    }

    /// A copy with one scalar-multiplication entry replaced; used to build broken carriers.
    pub fn with_smul_entry(&self, scalar: &Scalar, x: u32, value: u32) -> Table {
        let mut t = self.clone();
        let n = self.len();
        t.smul[scalar.residue().expect("prime field scalar") as usize * n + x as usize] = value;
        t
    }

    pub fn with_product(&self, mul: Vec<u32>) -> Result<Table> {
        Table::from_parts(
            self.field,
            self.labels.clone(),
            self.add.clone(),
            self.neg.clone(),
            self.smul.clone(),
            Some(mul),
        )
    }
}

impl Carrier for Table {
    type Elem = u32;

    fn field(&self) -> Field {
        self.field
    }

    fn add(&self, x: &u32, y: &u32) -> u32 {
        self.add[*x as usize * self.len() + *y as usize]
    }

    fn neg(&self, x: &u32) -> u32 {
        self.neg[*x as usize]
    }

    fn smul(&self, a: &Scalar, x: &u32) -> u32 {
        let r = a.residue().expect("prime field scalar") as usize;
        self.smul[r * self.len() + *x as usize]
    }

    fn show(&self, x: &u32) -> Value {
        self.labels[*x as usize].clone()
    }

    fn zero(&self) -> Option<u32> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|x| self.add[e * n + x] as usize == x)).map(|e| e as u32)
    }
}

impl Bracket for Table {
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        let m = self.mul.as_ref().expect("table has no product");
        m[*x as usize * self.len() + *y as usize]
    }
}

impl Enumerable for Table {
    fn elements(&self) -> Result<Vec<u32>> {
        Ok((0..self.len() as u32).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::heisenberg;
    use crate::isv::VectorCarrier;

    #[test]
    fn materializes_a_lie_algebra() {
        let f2 = Field::prime(2).unwrap();
        let c = VectorCarrier::new(heisenberg(f2));
        let (t, elems) = Table::from_algebra(&c).unwrap();
        assert_eq!(t.len(), 8);
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let (i, j) = (i as u32, j as u32);
                assert_eq!(elems[t.add(&i, &j) as usize], c.add(x, y));
                assert_eq!(elems[t.mul(&i, &j) as usize], c.mul(x, y));
            }
        }
    }

    #[test]
    fn rejects_bad_parts() {
        let f2 = Field::prime(2).unwrap();
        let labels = vec![Value::from(0), Value::from(1)];
        assert!(Table::from_parts(
            f2,
            labels.clone(),
            vec![0, 1, 1, 0],
            vec![0, 1],
            vec![0, 0, 0, 1],
            None
        )
        .is_ok());
        assert!(Table::from_parts(
            f2,
            labels,
            vec![0, 1, 1, 2],
            vec![0, 1],
            vec![0, 0, 0, 1],
            None
        )
        .is_err());
    }
}
