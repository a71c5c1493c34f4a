use crate::error::{Error, Result};
use crate::instance::{Instance, Side, Vertex};

/// A weak order over one side of the bipartition, as tie-groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterList {
    side: Side,
    groups: Vec<Vec<usize>>,
    // position of each member's group, None if not covered
    group_of: Vec<Option<usize>>,
}

impl MasterList {
    /// Groups must be disjoint and cover `0..side_len`.
    pub fn new(side: Side, side_len: usize, groups: Vec<Vec<usize>>) -> Result<MasterList> {
        let mut group_of = vec![None; side_len];
        for (g, members) in groups.iter().enumerate() {
            for &v in members {
                let slot = group_of.get_mut(v).ok_or_else(|| {
                    Error::MasterList(format!("{} is out of range", Vertex::new(side, v)))
                })?;
                if slot.is_some() {
                    return Err(Error::MasterList(format!(
                        "{} appears in more than one tie-group",
                        Vertex::new(side, v)
                    )));
                }
                *slot = Some(g);
            }
        }
        if let Some(v) = group_of.iter().position(|g| g.is_none()) {
            return Err(Error::MasterList(format!(
                "{} is not covered",
                Vertex::new(side, v)
            )));
        }
        let mut groups = groups;
        for g in &mut groups {
            g.sort_unstable();
        }
        Ok(MasterList {
            side,
            groups,
            group_of,
        })
    }

    /// The side whose vertices the master list orders.
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_of(&self, v: usize) -> Option<usize> {
        self.group_of.get(v).copied().flatten()
    }
}

/// Whether every list on `side` is the master list restricted to that
/// vertex's neighbours: strictly before in the list iff strictly before in
/// the master, tied iff in the same master tie-group.
pub fn conforms_to_master_list(instance: &Instance, side: Side, master: &MasterList) -> Result<bool> {
    if master.side() != side.opposite() {
        return Err(Error::MasterList(format!(
            "master list orders {} but the lists of {} are over {}",
            master.side(),
            side,
            side.opposite()
        )));
    }
    for i in 0..instance.side_len(side) {
        let v = Vertex::new(side, i);
        let mut entries = Vec::with_capacity(instance.degree(v));
        for &id in instance.incident(v) {
            let other = instance.other_end(v, id);
            let g = master.group_of(other).ok_or_else(|| {
                Error::MasterList(format!(
                    "{} is listed by {} but not covered",
                    Vertex::new(side.opposite(), other),
                    v
                ))
            })?;
            entries.push((instance.rank_at_side(side, id), g));
        }
        for (a, &(ra, ga)) in entries.iter().enumerate() {
            for &(rb, gb) in &entries[a + 1..] {
                if ra.cmp(&rb) != ga.cmp(&gb) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn women_over(men_lists: Vec<Vec<Vec<usize>>>, women_lists: Vec<Vec<Vec<usize>>>) -> Instance {
        Instance::from_lists(&men_lists, &women_lists).unwrap()
    }

    #[test]
    fn full_master_conforms() {
        // 3 men, 2 women who both list [0 1] then [2]
        let inst = women_over(
            vec![vec![vec![0, 1]], vec![vec![0, 1]], vec![vec![0, 1]]],
            vec![vec![vec![0, 1], vec![2]], vec![vec![0, 1], vec![2]]],
        );
        let master = MasterList::new(Side::Men, 3, vec![vec![1, 0], vec![2]]).unwrap();
        assert!(conforms_to_master_list(&inst, Side::Women, &master).unwrap());
    }

    #[test]
    fn swapped_groups_do_not_conform() {
        let inst = women_over(
            vec![vec![vec![0, 1]], vec![vec![0]], vec![vec![0, 1]]],
            vec![vec![vec![0, 1], vec![2]], vec![vec![2], vec![0]]],
        );
        let master = MasterList::new(Side::Men, 3, vec![vec![0, 1], vec![2]]).unwrap();
        assert!(!conforms_to_master_list(&inst, Side::Women, &master).unwrap());
    }

    #[test]
    fn splitting_a_master_tie_does_not_conform() {
        let inst = women_over(
            vec![vec![vec![0]], vec![vec![0]]],
            vec![vec![vec![0], vec![1]]],
        );
        let master = MasterList::new(Side::Men, 2, vec![vec![0, 1]]).unwrap();
        assert!(!conforms_to_master_list(&inst, Side::Women, &master).unwrap());
    }

    #[test]
    fn invalid_masters() {
        assert!(MasterList::new(Side::Men, 2, vec![vec![0], vec![0, 1]]).is_err());
        assert!(MasterList::new(Side::Men, 2, vec![vec![0]]).is_err());
        let inst = women_over(vec![vec![vec![0]]], vec![vec![vec![0]]]);
        let wrong_side = MasterList::new(Side::Women, 1, vec![vec![0]]).unwrap();
        assert!(conforms_to_master_list(&inst, Side::Women, &wrong_side).is_err());
    }
}
