// Placeholder main so the tools target links while the library grows.
// Replaced by the full command-line driver once all engines are in place.
#include <cstdio>

int main() {
    std::puts("rotdisc: command-line driver not built yet");
    return 2;
}
