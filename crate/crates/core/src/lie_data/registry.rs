use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::family::{GroupFamily, SpecialOrthogonal, SpecialUnitary, Spin, Unitary};

/// Group families selectable by name at runtime.
#[derive(Debug, Default, Clone)]
pub struct FamilyRegistry {
    families: BTreeMap<String, Arc<dyn GroupFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// SO, Spin, U and SU.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(SpecialOrthogonal));
        reg.register(Arc::new(Spin));
        reg.register(Arc::new(Unitary));
        reg.register(Arc::new(SpecialUnitary));
        reg
    }

    /// Adds or replaces a family under its own name.
    pub fn register(&mut self, family: Arc<dyn GroupFamily>) {
        self.families.insert(family.name().to_ascii_lowercase(), family);
    }

    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Option<Arc<dyn GroupFamily>> {
        self.families.get(&name.to_ascii_lowercase()).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.values().map(|f| f.name()).collect()
    }

    pub fn global() -> &'static FamilyRegistry {
        static REGISTRY: OnceLock<FamilyRegistry> = OnceLock::new();
        REGISTRY.get_or_init(FamilyRegistry::builtin)
    }
}
