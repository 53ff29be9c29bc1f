#include "amapsim/media.hpp"

#include <cstdlib>

namespace amapsim {

const char* media_name(MediaClass m) {
  switch (m) {
    case MediaClass::Voice: return "voice";
    case MediaClass::Video: return "video";
    case MediaClass::Ftp: return "ftp";
    case MediaClass::Data: return "data";
    case MediaClass::Email: return "email";
  }
  return "?";
}

const char* media_service_tag(MediaClass m) {
  switch (m) {
    case MediaClass::Voice: return "CBR";
    case MediaClass::Video: return "RT-VBR";
    case MediaClass::Ftp: return "NRT-VBR";
    case MediaClass::Data: return "ABR";
    case MediaClass::Email: return "UBR";
  }
  return "?";
}

bool parse_media(const std::string& name, MediaClass& out) {
  for (MediaClass m : kAllMediaClasses) {
    if (name == media_name(m)) {
      out = m;
      return true;
    }
  }
  return false;
}

int compare_priority(const Priority& a, const Priority& b) {
  if (a.low_latency && b.low_latency) return 0;
  if (a.low_latency) return 1;
  if (b.low_latency) return -1;
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  return 0;
}

std::string priority_to_string(const Priority& p) {
  return p.low_latency ? "low-latency" : std::to_string(p.level);
}

bool parse_priority(const std::string& text, Priority& out) {
  if (text == "low-latency") {
    out = Priority::lowest_latency();
    return true;
  }
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (end == nullptr || *end != '\0' || v <= 0) return false;
  out = Priority::numeric(static_cast<int>(v));
  return true;
}

}  // namespace amapsim
