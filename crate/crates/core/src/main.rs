fn main() {
    std::process::exit(fractal_hull::cli::run());
}
