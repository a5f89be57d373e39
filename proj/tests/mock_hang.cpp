// Test helper: consumes stdin and never answers, simulating a hung
// prediction worker.
#include <string>
#include <iostream>
#include <thread>
#include <chrono>

int main() {
    std::string line;
    while (std::getline(std::cin, line)) {
        std::this_thread::sleep_for(std::chrono::seconds(3600));
    }
    return 0;
}
