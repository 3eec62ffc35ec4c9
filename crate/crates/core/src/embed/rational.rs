//! Incremental order-preserving placement of countable orders into `Q`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::elem::{format_rational, validate, Elem};
use crate::error::{Error, Result};
use crate::order::cmp_raw;
use crate::term::OrderTerm;

type TableFn = dyn Fn(&Elem) -> Option<BigRational> + Send + Sync;

/// Where a newly placed point goes.
#[derive(Clone)]
pub enum Placement {
    /// First point at 0, new extremes at `max + 1` / `min - 1`, everything
    /// else at the midpoint of its placed neighbors.
    Midpoint,
    /// Values prescribed by a table; checked for order preservation as
    /// points are placed.
    Table(Arc<TableFn>),
}

impl Placement {
    /// A finite lookup table.
    pub fn table(entries: Vec<(Elem, BigRational)>) -> Placement {
        Placement::Table(Arc::new(move |e| {
            entries.iter().find(|(k, _)| k == e).map(|(_, v)| v.clone())
        }))
    }

    pub fn function(f: impl Fn(&Elem) -> Option<BigRational> + Send + Sync + 'static) -> Placement {
        Placement::Table(Arc::new(f))
    }
}

impl fmt::Debug for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::Midpoint => f.write_str("Midpoint"),
            Placement::Table(_) => f.write_str("Table(..)"),
        }
    }
}

/// A finite order embedding into `Q` that only ever grows.
#[derive(Debug, Clone)]
pub struct RationalEmbedding {
    term: OrderTerm,
    placement: Placement,
    /// Sorted by the term order; images strictly increasing.
    placed: Vec<(Elem, BigRational)>,
}

impl RationalEmbedding {
    pub fn new(term: &OrderTerm, placement: Placement) -> Result<Self> {
        term.require_concrete()?;
        Ok(RationalEmbedding {
            term: term.clone(),
            placement,
            placed: Vec::new(),
        })
    }

    pub fn term(&self) -> &OrderTerm {
        &self.term
    }

    /// Placed points in increasing order with their images.
    pub fn placed(&self) -> &[(Elem, BigRational)] {
        &self.placed
    }

    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    pub fn image(&self, e: &Elem) -> Option<&BigRational> {
        self.search(e).ok().map(|i| &self.placed[i].1)
    }

    fn search(&self, e: &Elem) -> std::result::Result<usize, usize> {
        self.placed.binary_search_by(|(p, _)| cmp_raw(&self.term, p, e))
    }

    /// Places `e` (a no-op when already placed) and returns its image.
    pub fn place(&mut self, e: &Elem) -> Result<BigRational> {
        validate(&self.term, e)?;
        let at = match self.search(e) {
            Ok(i) => return Ok(self.placed[i].1.clone()),
            Err(at) => at,
        };
        let below = at.checked_sub(1).map(|i| &self.placed[i]);
        let above = self.placed.get(at);
        let image = match &self.placement {
            Placement::Midpoint => match (below, above) {
                (None, None) => BigRational::zero(),
                (Some((_, lo)), None) => lo + BigRational::one(),
                (None, Some((_, hi))) => hi - BigRational::one(),
                (Some((_, lo)), Some((_, hi))) => (lo + hi) / BigRational::from_integer(BigInt::from(2)),
            },
            Placement::Table(f) => {
                let v = f(e).ok_or_else(|| Error::TableMissing(e.to_string()))?;
                let violation = |lo: &(Elem, BigRational), hi: (&Elem, &BigRational)| {
                    Error::TableNotMonotone {
                        lo: lo.0.to_string(),
                        hi: hi.0.to_string(),
                        lo_image: format_rational(&lo.1),
                        hi_image: format_rational(hi.1),
                    }
                };
                if let Some(lo) = below.filter(|(_, lo)| *lo >= v) {
                    return Err(violation(lo, (e, &v)));
                }
                if let Some(hi) = above.filter(|(_, hi)| *hi <= v) {
                    return Err(Error::TableNotMonotone {
                        lo: e.to_string(),
                        hi: hi.0.to_string(),
                        lo_image: format_rational(&v),
                        hi_image: format_rational(&hi.1),
                    });
                }
                v
            }
        };
        self.placed.insert(at, (e.clone(), image.clone()));
        Ok(image)
    }
}

/// Back-and-forth placement of a stream of points.
pub fn embed_rationals(
    t: &OrderTerm,
    elems: impl IntoIterator<Item = Elem>,
    placement: Placement,
) -> Result<RationalEmbedding> {
    let mut emb = RationalEmbedding::new(t, placement)?;
    for e in elems {
        emb.place(&e)?;
    }
    Ok(emb)
}
