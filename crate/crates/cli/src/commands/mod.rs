pub mod batch;
pub mod ocr_fetch;
pub mod regress;
pub mod score;
