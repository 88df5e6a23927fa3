//! Leftover-style linear zone state.
//!
//! The zone threads through linear checking; slots flip live to consumed at
//! their single use. A top-absorbing term sets the slack flag, which lets
//! any remaining live slots be discharged at finalization. Entry types are
//! kept relative to the current cartesian telescope; entering and leaving a
//! cartesian binder shifts them.

use crate::syntax::expr::SlotId;
use crate::syntax::{ops, Ctx, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotStatus {
    Live,
    Consumed,
    Slacked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZoneEntry {
    pub slot: SlotId,
    pub ty: Expr,
    pub status: SlotStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Zone {
    pub entries: Vec<ZoneEntry>,
    pub slack: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZoneError {
    /// Slot used when not live: 0 = never in scope, otherwise a reuse.
    NotLive { slot: SlotId, was_consumed: bool },
    /// Additive branches consumed different slot sets.
    BranchMismatch { slot: SlotId },
    /// An entry type escaped its scope during a shift.
    ShiftUnderflow,
}

impl Zone {
    pub fn empty() -> Zone {
        Zone::default()
    }

    pub fn from_ctx(ctx: &Ctx) -> Zone {
        Zone {
            entries: ctx
                .lin
                .iter()
                .map(|(s, t)| ZoneEntry { slot: *s, ty: t.clone(), status: SlotStatus::Live })
                .collect(),
            slack: false,
        }
    }

    fn position(&self, slot: SlotId) -> Option<usize> {
        self.entries.iter().rposition(|e| e.slot == slot)
    }

    pub fn contains(&self, slot: SlotId) -> bool {
        self.position(slot).is_some()
    }

    /// Consume a live slot, returning its type.
    pub fn consume(&mut self, slot: SlotId) -> Result<Expr, ZoneError> {
        match self.position(slot) {
            None => Err(ZoneError::NotLive { slot, was_consumed: false }),
            Some(i) => {
                let e = &mut self.entries[i];
                if e.status != SlotStatus::Live {
                    return Err(ZoneError::NotLive { slot, was_consumed: true });
                }
                e.status = SlotStatus::Consumed;
                Ok(e.ty.clone())
            }
        }
    }

    pub fn push(&mut self, slot: SlotId, ty: Expr) {
        self.entries.push(ZoneEntry { slot, ty, status: SlotStatus::Live });
    }

    /// Remove the innermost entry for `slot`; it must have been consumed,
    /// unless the slack flag covers it. Returns the number of uses seen
    /// (0 or 1) for error reporting.
    pub fn pop(&mut self, slot: SlotId) -> Result<(), ZoneError> {
        let i = self.position(slot).ok_or(ZoneError::NotLive { slot, was_consumed: false })?;
        let entry = self.entries.remove(i);
        match entry.status {
            SlotStatus::Consumed | SlotStatus::Slacked => Ok(()),
            SlotStatus::Live if self.slack => Ok(()),
            SlotStatus::Live => Err(ZoneError::NotLive { slot, was_consumed: false }),
        }
    }

    pub fn set_type(&mut self, slot: SlotId, ty: Expr) {
        if let Some(i) = self.position(slot) {
            self.entries[i].ty = ty;
        }
    }

    pub fn live_type(&self, slot: SlotId) -> Option<&Expr> {
        self.position(slot).and_then(|i| {
            let e = &self.entries[i];
            (e.status == SlotStatus::Live).then_some(&e.ty)
        })
    }

    /// Shift all entry types across a cartesian binder boundary.
    pub fn shift_types(&mut self, amount: i64) -> Result<(), ZoneError> {
        for e in &mut self.entries {
            e.ty = ops::shift(&e.ty, 0, amount).map_err(|_| ZoneError::ShiftUnderflow)?;
        }
        Ok(())
    }

    pub fn consumed_slots(&self) -> Vec<SlotId> {
        self.entries
            .iter()
            .filter(|e| e.status == SlotStatus::Consumed)
            .map(|e| e.slot)
            .collect()
    }

    pub fn live_slots(&self) -> Vec<SlotId> {
        self.entries
            .iter()
            .filter(|e| e.status == SlotStatus::Live)
            .map(|e| e.slot)
            .collect()
    }

    /// Merge the results of two additive branches run from the same
    /// snapshot. Consumption must agree, except that a branch with slack may
    /// under-consume. `self` becomes the merged state.
    pub fn merge_additive(&mut self, other: &Zone) -> Result<(), ZoneError> {
        let mine: Vec<SlotId> = self.consumed_slots();
        let theirs: Vec<SlotId> = other.consumed_slots();
        let mine_sub = mine.iter().all(|s| theirs.contains(s));
        let theirs_sub = theirs.iter().all(|s| mine.contains(s));
        let ok = (mine_sub && theirs_sub)
            || (self.slack && mine_sub)
            || (other.slack && theirs_sub);
        if !ok {
            let slot = mine
                .iter()
                .find(|s| !theirs.contains(s))
                .or_else(|| theirs.iter().find(|s| !mine.contains(s)))
                .copied()
                .unwrap();
            return Err(ZoneError::BranchMismatch { slot });
        }
        for e in &mut self.entries {
            if e.status == SlotStatus::Live && theirs.contains(&e.slot) {
                e.status = SlotStatus::Consumed;
            }
        }
        self.slack = self.slack && other.slack;
        Ok(())
    }

    /// Top-level acceptance: every slot consumed, or slacked under the flag.
    pub fn finalize(&mut self) -> Result<(), ZoneError> {
        for e in &mut self.entries {
            if e.status == SlotStatus::Live {
                if self.slack {
                    e.status = SlotStatus::Slacked;
                } else {
                    return Err(ZoneError::NotLive { slot: e.slot, was_consumed: false });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consume_once_only() {
        let mut z = Zone::empty();
        z.push(1, Expr::UnitI);
        assert!(z.consume(1).is_ok());
        assert_eq!(z.consume(1), Err(ZoneError::NotLive { slot: 1, was_consumed: true }));
    }

    #[test]
    fn finalize_requires_consumption_or_slack() {
        let mut z = Zone::empty();
        z.push(1, Expr::UnitI);
        assert!(z.finalize().is_err());
        z.slack = true;
        assert!(z.finalize().is_ok());
        assert_eq!(z.entries[0].status, SlotStatus::Slacked);
    }

    #[test]
    fn additive_merge_respects_slack() {
        let mut base = Zone::empty();
        base.push(1, Expr::UnitI);
        base.push(2, Expr::TopTy);
        let mut left = base.clone();
        left.slack = true; // a top absorbed everything it was given
        let mut right = base.clone();
        right.consume(1).unwrap();
        left.merge_additive(&right).unwrap();
        assert_eq!(left.consumed_slots(), vec![1]);
        assert!(!left.slack);

        let mut a = base.clone();
        a.consume(1).unwrap();
        let mut b = base.clone();
        b.consume(2).unwrap();
        assert!(a.merge_additive(&b).is_err());
    }
}
