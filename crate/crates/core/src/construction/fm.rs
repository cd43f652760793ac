use crate::error::{Error, Result};

/// Streams the subsets of `items` that take exactly one element from each
/// consecutive block of `m`, in lexicographic order of the per-block choices
/// (the last block varies fastest).
#[derive(Debug, Clone)]
pub struct FmSubsets<'a, T> {
    items: &'a [T],
    m: usize,
    choice: Vec<usize>,
    done: bool,
}

pub fn f_m_subsets<T: Clone>(items: &[T], m: usize) -> Result<FmSubsets<'_, T>> {
    if m == 0 || items.is_empty() || items.len() % m != 0 {
        return Err(Error::InvalidParameter(format!(
            "{} items cannot be split into blocks of {m}",
            items.len()
        )));
    }
    Ok(FmSubsets {
        items,
        m,
        choice: vec![0; items.len() / m],
        done: false,
    })
}

impl<T> FmSubsets<'_, T> {
    pub fn blocks(&self) -> usize {
        self.choice.len()
    }

    /// `m^blocks`, or `None` on overflow.
    pub fn count(&self) -> Option<u128> {
        (self.m as u128).checked_pow(self.choice.len() as u32)
    }
}

impl<T: Clone> Iterator for FmSubsets<'_, T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.done {
            return None;
        }
        let out = self
            .choice
            .iter()
            .enumerate()
            .map(|(b, &i)| self.items[b * self.m + i].clone())
            .collect();
        // odometer step
        let mut b = self.choice.len();
        loop {
            if b == 0 {
                self.done = true;
                break;
            }
            b -= 1;
            self.choice[b] += 1;
            if self.choice[b] < self.m {
                break;
            }
            self.choice[b] = 0;
        }
        Some(out)
    }
}

/// Position of a choice vector in the enumeration order of [`f_m_subsets`].
pub fn fm_index(choices: &[usize], m: usize) -> usize {
    choices.iter().fold(0, |acc, &c| acc * m + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_blocks_of_two() {
        let got: Vec<_> = f_m_subsets(&["a1", "a2", "a3", "a4"], 2).unwrap().collect();
        assert_eq!(
            got,
            vec![
                vec!["a1", "a3"],
                vec!["a1", "a4"],
                vec!["a2", "a3"],
                vec!["a2", "a4"]
            ]
        );
    }

    #[test]
    fn single_block() {
        let got: Vec<_> = f_m_subsets(&["a1", "a2"], 2).unwrap().collect();
        assert_eq!(got, vec![vec!["a1"], vec!["a2"]]);
    }

    #[test]
    fn nine_in_blocks_of_three_matches_brute_force() {
        let items: Vec<usize> = (0..9).collect();
        let got: Vec<Vec<usize>> = f_m_subsets(&items, 3).unwrap().collect();
        // brute force: every 3-subset of 0..9 hitting each block once
        let mut expected = Vec::new();
        for mask in 0u32..(1 << 9) {
            let set: Vec<usize> = (0..9).filter(|i| mask & (1 << i) != 0).collect();
            if set.len() == 3 && (0..3).all(|b| set.iter().filter(|&&x| x / 3 == b).count() == 1) {
                expected.push(set);
            }
        }
        expected.sort();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got.len(), 27);
        assert_eq!(sorted, expected);
        // enumeration order agrees with fm_index
        for (i, s) in got.iter().enumerate() {
            let choices: Vec<usize> = s.iter().map(|x| x % 3).collect();
            assert_eq!(fm_index(&choices, 3), i);
        }
    }

    #[test]
    fn rejects_ragged_lengths() {
        assert!(f_m_subsets(&[1, 2, 3], 2).is_err());
        assert!(f_m_subsets::<u8>(&[], 2).is_err());
    }
}
