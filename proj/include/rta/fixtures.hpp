#pragma once

// Bundled solutions of 2(r^2+2s^2)^2 - (u^2+2v^2)^2 = 1 (decimal strings,
// verbatim). Solutions 1 and 2 sit on the companion Pell pairs with indices
// 128 and 140; solution 3 on index 468.

#include <array>
#include <string_view>

namespace rta::fixtures {

struct DecimalTuple {
  int d;
  std::string_view r, s, u, v;
};

inline constexpr std::array<DecimalTuple, 3> kKnownSolutions = {{
    {2,
     "8778587058534206806292620008143660818426865514367",
     "1797139324882565197548134105090153037130149943440",
     "5221618295817678692343699483662704959631052331713",
     "6739958317343073985310999451965479560858521871624"
    },
    {2,
     "236514273578291664435175687910940947997062625569350147",
     "190287799713845710242676318005133890540427682774721600",
     "320623735768998122027997700001721820015837211029746377",
     "198400977912717981475493948031175304069461203340217424"
    },
    {2,
     "120467784081973065362206335336568391308254605335979002527529841986644423828911996038887870552013833124218344678883996746787107082137396980850902111381776072939521179137051555383659",
     "28969439944576139848302582684894750026821584718807055571511466142025107814449895858020174137791958107692957327600812260870241615584324785382155690425614274084989751670116452606560",
     "13519635739873046421030662654395642217832513602229347333345620813769455497129157439736053553929077445621313871217384835256485487834762997363139468311797322507802764569327905413177",
     "106570802532265028597850159939791513955713767327960632149341703749584264199100661176169441237306731010447512066786172237816690147584537869559546356198844075069003058520448399674296"
    },
}};

}  // namespace rta::fixtures
