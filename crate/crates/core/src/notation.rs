//! Rendering of carrier elements. Every element is keyed by a flat residue
//! vector; the notation decides how that key is printed.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// A coordinate vector of the given length.
    Leaf(usize),
    /// A tuple of components, e.g. the carrier of a product.
    Product(Vec<Shape>),
}

impl Shape {
    pub fn dim(&self) -> usize {
        match self {
            Shape::Leaf(d) => *d,
            Shape::Product(parts) => parts.iter().map(Shape::dim).sum(),
        }
    }

    /// Top-level leaves are always parenthesized; one-coordinate leaves
    /// inside a tuple print as bare scalars, so the pair carrier over `Z_3`
    /// renders as `(1,2)` and over `Z_3^2` as `((1,0),(2,2))`. A key of the
    /// wrong length (from user input) prints as a flat tuple.
    pub fn render(&self, key: &[u32]) -> String {
        let mut out = String::new();
        if key.len() == self.dim() {
            self.render_into(key, true, &mut out);
        } else {
            render_coords(key, &mut out);
        }
        out
    }

    fn render_into(&self, key: &[u32], top: bool, out: &mut String) {
        match self {
            Shape::Leaf(1) if !top => out.push_str(&key[0].to_string()),
            Shape::Leaf(_) => render_coords(key, out),
            Shape::Product(parts) => {
                out.push('(');
                let mut at = 0;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let d = part.dim();
                    part.render_into(&key[at..at + d], false, out);
                    at += d;
                }
                out.push(')');
            }
        }
    }
}

fn render_coords(key: &[u32], out: &mut String) {
    out.push('(');
    for (i, c) in key.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&c.to_string());
    }
    out.push(')');
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Notation {
    Tuple(Shape),
    /// Key entry `i` is `0` when point `i+1` is outside the domain and
    /// `j+1` when point `i+1` maps to point `j+1`.
    PartialBijection {
        n: usize,
    },
    /// Key `[0]` is `+1`, key `[1]` is `-1`.
    Sign,
}

impl Notation {
    pub fn render(&self, key: &[u32]) -> String {
        match self {
            Notation::Tuple(shape) => shape.render(key),
            Notation::PartialBijection { .. } => {
                let parts: Vec<String> = key
                    .iter()
                    .enumerate()
                    .filter(|(_, &img)| img != 0)
                    .map(|(i, img)| format!("{}->{}", i + 1, img))
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
            Notation::Sign => if key[0] == 0 { "+1" } else { "-1" }.to_string(),
        }
    }

    pub fn key_len(&self) -> Option<usize> {
        match self {
            Notation::Tuple(shape) => Some(shape.dim()),
            Notation::PartialBijection { n } => Some(*n),
            Notation::Sign => Some(1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_rendering() {
        let pair1 = Shape::Product(vec![Shape::Leaf(1), Shape::Leaf(1)]);
        assert_eq!(pair1.render(&[1, 2]), "(1,2)");
        let pair2 = Shape::Product(vec![Shape::Leaf(2), Shape::Leaf(2)]);
        assert_eq!(pair2.render(&[1, 0, 2, 2]), "((1,0),(2,2))");
        assert_eq!(Shape::Leaf(1).render(&[4]), "(4)");
        let nested = Shape::Product(vec![pair1, Shape::Leaf(1)]);
        assert_eq!(nested.render(&[0, 1, 1]), "((0,1),1)");
    }

    #[test]
    fn other_notations() {
        assert_eq!(Notation::Sign.render(&[1]), "-1");
        assert_eq!(Notation::PartialBijection { n: 4 }.render(&[2, 3, 1, 0]), "{1->2,2->3,3->1}");
    }
}
