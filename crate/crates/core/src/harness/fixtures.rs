use crate::gog::{GogError, GogFile, GraphOfGroups, SplittingMeta};

/// A graph-of-groups test case with the hand-computed abelianization of
/// its fundamental group.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub gog: GraphOfGroups,
    pub meta: SplittingMeta,
    pub expected_abelianization: Option<String>,
}

impl Fixture {
    pub fn from_json(name: &str, text: &str, expected: Option<&str>) -> Result<Self, GogError> {
        let (gog, meta) = GogFile::parse(text)?.build()?;
        Ok(Fixture { name: name.to_string(), gog, meta, expected_abelianization: expected.map(str::to_string) })
    }
}

const BUILTIN: &[(&str, &str, &str)] = &[
    ("z2_loop", include_str!("../../fixtures/z2_loop.json"), "Z^2"),
    ("trefoil", include_str!("../../fixtures/trefoil.json"), "Z"),
    ("edgeless", include_str!("../../fixtures/edgeless.json"), "0"),
    ("path3", include_str!("../../fixtures/path3.json"), "Z"),
    ("double_loop", include_str!("../../fixtures/double_loop.json"), "Z^2"),
    ("triangle", include_str!("../../fixtures/triangle.json"), "Z^2"),
    ("bs_2_4", include_str!("../../fixtures/bs_2_4.json"), "Z + Z/2"),
    ("free_product_z2", include_str!("../../fixtures/free_product_z2.json"), "Z^3"),
];

/// The fixtures shipped in `crates/core/fixtures`.
pub fn builtin_fixtures() -> Vec<Fixture> {
    BUILTIN
        .iter()
        .map(|(name, text, ab)| Fixture::from_json(name, text, Some(ab)).expect("shipped fixture parses"))
        .collect()
}
