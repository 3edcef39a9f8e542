use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::InputError;
use crate::wfst::Label;

pub const EPSILON_SYMBOL: &str = "<eps>";
pub const BLANK_SYMBOL: &str = "<blank>";
pub const UNK_SYMBOL: &str = "<unk>";

/// Bidirectional symbol <-> label map. Label 0 is always epsilon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: Vec<Option<String>>,
    ids: BTreeMap<String, Label>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut ids = BTreeMap::new();
        ids.insert(EPSILON_SYMBOL.to_string(), 0);
        SymbolTable {
            symbols: alloc::vec![Some(EPSILON_SYMBOL.to_string())],
            ids,
        }
    }

    /// Returns the label of `symbol`, adding it with the next free id if new.
    pub fn intern(&mut self, symbol: &str) -> Label {
        if let Some(&id) = self.ids.get(symbol) {
            return id;
        }
        let id = self.symbols.len() as Label;
        self.symbols.push(Some(symbol.to_string()));
        self.ids.insert(symbol.to_string(), id);
        id
    }

    /// Adds `symbol` with an explicit id, as read from a symbol-table file.
    pub fn insert(&mut self, symbol: &str, id: Label) -> Result<(), InputError> {
        if let Some(&existing) = self.ids.get(symbol) {
            if existing == id {
                return Ok(());
            }
            return Err(InputError::SymbolConflict {
                symbol: symbol.to_string(),
                existing,
                requested: id,
            });
        }
        let idx = id as usize;
        if idx < self.symbols.len() {
            if let Some(other) = &self.symbols[idx] {
                return Err(InputError::SymbolConflict {
                    symbol: other.clone(),
                    existing: id,
                    requested: id,
                });
            }
        } else {
            self.symbols.resize(idx + 1, None);
        }
        self.symbols[idx] = Some(symbol.to_string());
        self.ids.insert(symbol.to_string(), id);
        Ok(())
    }

    pub fn get(&self, symbol: &str) -> Option<Label> {
        self.ids.get(symbol).copied()
    }

    /// Like [`get`](Self::get) but falls back to `<unk>` when the table has it.
    pub fn get_or_unk(&self, symbol: &str) -> Option<Label> {
        self.get(symbol).or_else(|| self.get(UNK_SYMBOL))
    }

    pub fn symbol(&self, id: Label) -> Option<&str> {
        self.symbols.get(id as usize).and_then(|s| s.as_deref())
    }

    /// Number of symbols including epsilon.
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 1
    }

    /// `(symbol, id)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Label)> {
        self.symbols
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_deref().map(|s| (s, i as Label)))
    }
}
