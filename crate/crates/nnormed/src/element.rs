use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::vector::Vector;

/// A member of one of the supported spaces: a coordinate vector, a
/// polynomial, or a pair from a Cartesian product of two spaces.
///
/// Serialization is structural: vectors as arrays, polynomials as
/// `{"coeffs":[...]}`, pairs as `{"left":...,"right":...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Vector(Vector),
    Polynomial(Polynomial),
    Pair(Box<ProductPair>),
}

/// Element of a product space `X x Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductPair {
    pub left: Element,
    pub right: Element,
}

impl ProductPair {
    pub fn new(left: Element, right: Element) -> Result<Self> {
        // Degenerate sides are already unrepresentable (constructors reject
        // empty vectors/polynomials); nested pairs are allowed.
        Ok(ProductPair { left, right })
    }
}

impl Element {
    pub fn vector(coords: Vec<f64>) -> Result<Element> {
        Ok(Element::Vector(Vector::new(coords)?))
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Result<Element> {
        Ok(Element::Polynomial(Polynomial::new(coeffs)?))
    }

    pub fn pair(left: Element, right: Element) -> Result<Element> {
        Ok(Element::Pair(Box::new(ProductPair::new(left, right)?)))
    }

    pub fn as_vector(&self) -> Result<&Vector> {
        match self {
            Element::Vector(v) => Ok(v),
            _ => Err(Error::KindMismatch { index: 0 }),
        }
    }

    pub fn as_polynomial(&self) -> Result<&Polynomial> {
        match self {
            Element::Polynomial(p) => Ok(p),
            _ => Err(Error::KindMismatch { index: 0 }),
        }
    }

    pub fn as_pair(&self) -> Result<&ProductPair> {
        match self {
            Element::Pair(p) => Ok(p),
            _ => Err(Error::KindMismatch { index: 0 }),
        }
    }

    /// True when both elements have the same structural kind (and, for
    /// vectors, the same dimension).
    pub fn same_kind(&self, other: &Element) -> bool {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => a.dim() == b.dim(),
            (Element::Polynomial(_), Element::Polynomial(_)) => true,
            (Element::Pair(a), Element::Pair(b)) => {
                a.left.same_kind(&b.left) && a.right.same_kind(&b.right)
            }
            _ => false,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) if a.dim() == b.dim() => {
                Ok(Element::Vector(a.add(b)))
            }
            (Element::Polynomial(a), Element::Polynomial(b)) => Ok(Element::Polynomial(a.add(b))),
            (Element::Pair(a), Element::Pair(b)) => Element::pair(
                a.left.add(&b.left)?,
                a.right.add(&b.right)?,
            ),
            _ => Err(Error::KindMismatch { index: 0 }),
        }
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) if a.dim() == b.dim() => {
                Ok(Element::Vector(a.sub(b)))
            }
            (Element::Polynomial(a), Element::Polynomial(b)) => Ok(Element::Polynomial(a.sub(b))),
            (Element::Pair(a), Element::Pair(b)) => Element::pair(
                a.left.sub(&b.left)?,
                a.right.sub(&b.right)?,
            ),
            _ => Err(Error::KindMismatch { index: 0 }),
        }
    }

    pub fn scale(&self, alpha: f64) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.scale(alpha)),
            Element::Polynomial(p) => Element::Polynomial(p.scale(alpha)),
            Element::Pair(p) => Element::Pair(Box::new(ProductPair {
                left: p.left.scale(alpha),
                right: p.right.scale(alpha),
            })),
        }
    }

    /// Flat coordinate embedding used by the linear-dependence check:
    /// vector coordinates, polynomial coefficients padded to `pad`, or the
    /// concatenation of both sides of a pair.
    pub fn embed(&self, pad: usize) -> Vec<f64> {
        match self {
            Element::Vector(v) => v.coords().to_vec(),
            Element::Polynomial(p) => p.padded_coeffs(pad),
            Element::Pair(p) => {
                let mut row = p.left.embed(pad);
                row.extend(p.right.embed(pad));
                row
            }
        }
    }

    /// Length needed so polynomial embeddings of all listed elements share a
    /// common padded length.
    pub fn common_pad(elements: &[Element]) -> usize {
        elements
            .iter()
            .map(|e| match e {
                Element::Polynomial(p) => p.coeffs().len(),
                Element::Pair(p) => {
                    Element::common_pad(std::slice::from_ref(&p.left))
                        .max(Element::common_pad(std::slice::from_ref(&p.right)))
                }
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}
