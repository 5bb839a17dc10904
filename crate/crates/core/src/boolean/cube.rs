use crate::error::{domain, Result};

/// A point of `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubePoint {
    bits: Vec<bool>,
}

impl CubePoint {
    pub fn new(bits: Vec<bool>) -> Self {
        CubePoint { bits }
    }

    pub fn zero(n: usize) -> Self {
        CubePoint { bits: vec![false; n] }
    }

    /// Bit `i` of `index` is coordinate `i`.
    pub fn from_index(n: usize, index: usize) -> Self {
        CubePoint { bits: (0..n).map(|i| (index >> i) & 1 == 1).collect() }
    }

    /// Parses a string of `0`/`1`, coordinate 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(domain(format!("invalid cube point {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(CubePoint::new)
    }

    pub fn to_index(&self) -> usize {
        self.bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as usize) << i))
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

fn same_length(x: &CubePoint, y: &CubePoint) -> Result<()> {
    if x.n() != y.n() {
        return Err(domain(format!("cube points of lengths {} and {}", x.n(), y.n())));
    }
    Ok(())
}

pub fn hamming_distance(x: &CubePoint, y: &CubePoint) -> Result<usize> {
    same_length(x, y)?;
    Ok(x.bits.iter().zip(&y.bits).filter(|(a, b)| a != b).count())
}

/// `χ_y(x) = (-1)^{y·x}`.
pub fn character_eval(y: &CubePoint, x: &CubePoint) -> Result<i32> {
    same_length(x, y)?;
    let dot = x.bits.iter().zip(&y.bits).filter(|(&a, &b)| a && b).count();
    Ok(if dot % 2 == 0 { 1 } else { -1 })
}

/// Indices of `{0,1}^n` grouped by Hamming weight.
pub fn weight_classes(n: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); n + 1];
    for idx in 0..1usize << n {
        classes[idx.count_ones() as usize].push(idx);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CubePoint {
        CubePoint::parse(s).unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&p("0110"), &p("0110")).unwrap(), 0);
        assert_eq!(hamming_distance(&p("000"), &p("111")).unwrap(), 3);
        assert_eq!(hamming_distance(&p("0011"), &p("0101")).unwrap(), 2);
        assert!(hamming_distance(&p("01"), &p("011")).is_err());
    }

    #[test]
    fn characters() {
        assert_eq!(character_eval(&p("000"), &p("101")).unwrap(), 1);
        assert_eq!(character_eval(&p("11"), &p("10")).unwrap(), -1);
        assert_eq!(character_eval(&p("11"), &p("11")).unwrap(), 1);
        assert!(character_eval(&p("1"), &p("11")).is_err());
    }

    #[test]
    fn encoding_round_trip() {
        for idx in 0..32 {
            assert_eq!(CubePoint::from_index(5, idx).to_index(), idx);
        }
        assert_eq!(p("100").to_index(), 1);
        assert!(CubePoint::parse("012").is_err());
    }

    #[test]
    fn class_sizes_are_binomials() {
        for n in 0..=10usize {
            let classes = weight_classes(n);
            let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
            assert_eq!(sizes.iter().sum::<usize>(), 1 << n);
            for (k, s) in sizes.iter().enumerate() {
                assert_eq!(crate::exact::rational::binomial(n as i64, k as i64), (*s).into());
            }
        }
    }
}
