pub mod certificate;
pub mod disc_forms;
pub mod exact_linalg;
pub mod lattices;
pub mod mukai_twisted;
pub mod hilbert_liaison;
pub mod scroll_calculus;
pub mod ff_geometry;
pub mod suites;
