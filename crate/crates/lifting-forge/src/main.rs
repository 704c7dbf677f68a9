fn main() {
    std::process::exit(lifting_forge::cli::run());
}
