fn main() {
    std::process::exit(lenscontact::cli::run());
}
