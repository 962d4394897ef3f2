fn main() {
    std::process::exit(nnormed::cli::run());
}
