#ifndef GAUSSYM_CORE_FILE_LOCK_HPP
#define GAUSSYM_CORE_FILE_LOCK_HPP

#include <filesystem>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace gaussym {

/// Advisory flock on a lock file, held for the object's lifetime.
class FileLock {
public:
    enum class Mode { shared = LOCK_SH, exclusive = LOCK_EX };

    FileLock(const std::filesystem::path& p, Mode mode) : fd_(::open(p.c_str(), O_RDWR | O_CREAT, 0644)) {
        if (fd_ >= 0) ::flock(fd_, static_cast<int>(mode));
    }
    ~FileLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_;
};

} // namespace gaussym

#endif
