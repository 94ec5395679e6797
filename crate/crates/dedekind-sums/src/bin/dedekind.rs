fn main() {
    std::process::exit(dedekind_sums::cli::run(std::env::args_os()));
}
