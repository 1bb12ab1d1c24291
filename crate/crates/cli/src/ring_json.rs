//! Ring files.
//!
//! ```json
//! {
//!   "basis": [{"label": "1", "degree": 0}, {"label": "v", "degree": 2}],
//!   "products": [{"i": 1, "j": 1, "coords": ["0", "0"]}]
//! }
//! ```
//!
//! `coords` lists the product `b_i · b_j` in the full basis, each entry an exact
//! rational written `p` or `p/q`. Omitted products are zero and products with the
//! unit are implied. Exactly one basis element has degree 0.

use cdga_core::{FiniteRing, Rational, RingBasisElement};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| format!("`{s}` is not a rational number of the form p or p/q"))
}

impl RingFile {
    pub fn from_ring(ring: &FiniteRing) -> Self {
        let basis = ring
            .basis()
            .iter()
            .map(|b| BasisEntry {
                label: b.label.clone(),
                degree: b.degree,
            })
            .collect();
        let n = ring.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = ring.product(i, j);
                if c.iter().any(|x| !x.is_zero()) {
                    products.push(ProductEntry {
                        i,
                        j,
                        coords: c.iter().map(ToString::to_string).collect(),
                    });
                }
            }
        }
        RingFile { basis, products }
    }

    pub fn to_ring(&self) -> Result<FiniteRing, String> {
        let basis = self
            .basis
            .iter()
            .map(|b| RingBasisElement {
                label: b.label.clone(),
                degree: b.degree,
            })
            .collect();
        let mut products = Vec::new();
        for p in &self.products {
            let coords = p
                .coords
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            products.push(((p.i, p.j), coords));
        }
        FiniteRing::new(basis, products).map_err(|e| e.to_string())
    }
}

pub fn read_ring(text: &str) -> Result<FiniteRing, String> {
    let file: RingFile = serde_json::from_str(text).map_err(|e| format!("ring JSON: {e}"))?;
    file.to_ring()
}

pub fn write_ring(ring: &FiniteRing) -> String {
    let mut s =
        serde_json::to_string_pretty(&RingFile::from_ring(ring)).expect("ring file serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdga_core::{extract_ring, spaces};

    #[test]
    fn round_trip() {
        for name in ["cp2", "s2*s2", "kt"] {
            let entry = spaces::lookup(name).unwrap();
            let spaces::SpaceData::Model { cdga, dimension } = entry.data else {
                unreachable!()
            };
            let ring = extract_ring(&cdga, dimension as u32).unwrap();
            let text = write_ring(&ring);
            assert_eq!(read_ring(&text).unwrap(), ring, "{name}");
            assert_eq!(write_ring(&read_ring(&text).unwrap()), text);
        }
    }

    #[test]
    fn handwritten() {
        let text = r#"{"basis":[{"label":"1","degree":0},{"label":"v","degree":2},{"label":"w","degree":4}],
            "products":[{"i":1,"j":1,"coords":["0","0","1/2"]}]}"#;
        let ring = read_ring(text).unwrap();
        assert_eq!(ring.product(1, 1)[2], cdga_core::rational(1, 2));
        assert_eq!(ring.product(0, 2), ring.basis_vector(2));
        assert!(read_ring(r#"{"basis":[{"label":"1","degree":0}],"extra":1}"#).is_err());
        assert!(read_ring(r#"{"basis":[{"label":"v","degree":2}]}"#).is_err());
        let bad = r#"{"basis":[{"label":"1","degree":0},{"label":"v","degree":2}],
            "products":[{"i":1,"j":1,"coords":["0","x"]}]}"#;
        assert!(read_ring(bad).unwrap_err().contains("`x`"));
    }
}
