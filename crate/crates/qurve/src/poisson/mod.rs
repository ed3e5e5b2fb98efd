//! Necklace Lie algebras, double brackets and one-way flows.

macro_rules! linear_combination {
    ($name:ident, $key:ty) => {
        #[derive(Clone, Debug, Default, PartialEq, Eq)]
        pub struct $name {
            terms: std::collections::BTreeMap<$key, $crate::rational::Q>,
        }

        impl $name {
            pub fn zero() -> Self {
                Self::default()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn terms(&self) -> &std::collections::BTreeMap<$key, $crate::rational::Q> {
                &self.terms
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn add_term(&mut self, key: $key, c: $crate::rational::Q) {
                if num::Zero::is_zero(&c) {
                    return;
                }
                use std::collections::btree_map::Entry;
                match self.terms.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if num::Zero::is_zero(e.get()) {
                            e.remove();
                        }
                    }
                }
            }

            pub fn term(key: $key, c: $crate::rational::Q) -> Self {
                let mut s = Self::zero();
                s.add_term(key, c);
                s
            }

            pub fn add_assign_scaled(&mut self, other: &Self, c: &$crate::rational::Q) {
                for (k, v) in &other.terms {
                    self.add_term(k.clone(), v * c);
                }
            }

            pub fn scaled(&self, c: &$crate::rational::Q) -> Self {
                let mut s = Self::zero();
                s.add_assign_scaled(self, c);
                s
            }

            pub fn coefficient(&self, key: &$key) -> $crate::rational::Q {
                self.terms.get(key).cloned().unwrap_or_else(<$crate::rational::Q as num::Zero>::zero)
            }
        }

        impl std::ops::Add for &$name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                let mut s = self.clone();
                s.add_assign_scaled(o, &<$crate::rational::Q as num::One>::one());
                s
            }
        }

        impl std::ops::Sub for &$name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                let mut s = self.clone();
                s.add_assign_scaled(o, &-<$crate::rational::Q as num::One>::one());
                s
            }
        }

        impl std::ops::Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scaled(&-<$crate::rational::Q as num::One>::one())
            }
        }

        impl FromIterator<($key, $crate::rational::Q)> for $name {
            fn from_iter<I: IntoIterator<Item = ($key, $crate::rational::Q)>>(it: I) -> Self {
                let mut s = Self::zero();
                for (k, c) in it {
                    s.add_term(k, c);
                }
                s
            }
        }
    };
}


mod bracket;
mod flow;
mod necklace;
mod path;

pub use bracket::*;
pub use flow::*;
pub use necklace::*;
pub use path::*;
