fn main() {
    std::process::exit(lie_chord::cli::run(std::env::args_os()));
}
