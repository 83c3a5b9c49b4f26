pub mod exact;
pub mod jet;
pub mod model;
pub mod series;
pub mod grid;
pub mod closed_form;
pub mod quadrature;
pub mod reduction;
pub mod evolution;
pub mod conservation;
pub mod table1;
pub mod report;
pub mod cli;
